#pragma once

#include <cstdint>
#include <vector>

#include "ltlf/sample.hpp"

namespace ltlf::seqdata {

struct DatasetSplit {
    std::vector<SequenceSample> train;
    std::vector<SequenceSample> test;
    std::uint64_t seed = 0;
};

/// Seeded shuffle, then the first floor(ratio * n) records train.
DatasetSplit split_dataset(const std::vector<SequenceSample>& samples, double ratio, std::uint64_t seed);

/// Size of the training part for `total` records.
std::size_t train_count(std::size_t total, double ratio);

}  // namespace ltlf::seqdata
