#pragma once

#include <span>
#include <string>
#include <vector>

#include "ltlf/records.hpp"

namespace ltlf::featlab {

/// Id given to the virtual feeder standing in for `member_ids`.
std::string virtual_feeder_id(std::vector<std::string> member_ids);

/// Averages the feeders of one year into a single record. Peak, large-customer
/// change and DER/EV growth are plain means; residential and commercial shares
/// are peak-weighted means. Members are combined in id order, so the result
/// does not depend on the order they are passed in.
FeederYearRecord build_virtual_feeder(std::span<const FeederYearRecord> members);

struct ResolvedFeeders {
    FeederTable table;
    std::vector<std::vector<std::string>> groups;  // member ids of each virtual feeder
};

/// Replaces every set of feeders connected by transfer events with one virtual
/// feeder. A year is emitted for a virtual feeder only when every member has
/// data for it. Feeders without events pass through unchanged.
ResolvedFeeders resolve_virtual_feeders(const FeederTable& feeders,
                                        std::span<const TransferEvent> events);

}  // namespace ltlf::featlab
