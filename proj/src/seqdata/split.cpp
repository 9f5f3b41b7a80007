#include "ltlf/seqdata/split.hpp"

#include <cmath>
#include <numeric>

#include "ltlf/error.hpp"
#include "ltlf/random.hpp"

namespace ltlf::seqdata {

std::size_t train_count(std::size_t total, double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("split ratio must lie in (0, 1)");
    // 1997 records at 0.8 -> 1597 / 400
    return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(total) + 1e-9));
}

DatasetSplit split_dataset(const std::vector<SequenceSample>& samples, double ratio, std::uint64_t seed) {
    const std::size_t n_train = train_count(samples.size(), ratio);
    if (samples.empty()) throw DomainError("cannot split an empty sample set");

    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(order));

    DatasetSplit split;
    split.seed = seed;
    split.train.reserve(n_train);
    split.test.reserve(samples.size() - n_train);
    for (std::size_t i = 0; i < order.size(); ++i) {
        (i < n_train ? split.train : split.test).push_back(samples[order[i]]);
    }
    return split;
}

}  // namespace ltlf::seqdata
