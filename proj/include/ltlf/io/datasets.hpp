#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "ltlf/records.hpp"
#include "ltlf/seqdata/dataset.hpp"

namespace ltlf::io {

/// Feeder-year rows of one season. Columns: feeder_id, year, season,
/// peak_demand_A, residential_pct, commercial_pct,
/// large_customer_net_change_A, optional der_growth, ev_growth. Shares are
/// fractions; the industrial share is derived.
FeederTable read_feeder_years(const std::string& path, Season season);
void write_feeder_years(const std::string& path, const std::map<Season, FeederTable>& seasons);

/// Regional rows of one season. Columns: year, season, economic columns,
/// temperature_C. With `econ_columns` empty every other column is economic.
RegionalHistory read_regional_years(const std::string& path, Season season,
                                    const std::vector<std::string>& econ_columns = {});
void write_regional_years(const std::string& path, const std::map<Season, RegionalHistory>& seasons);

/// Columns: year, feeder_ids (comma-joined inside quotes, donor first).
std::vector<TransferEvent> read_transfer_log(const std::string& path);
void write_transfer_log(const std::string& path, const std::vector<TransferEvent>& events);

nlohmann::json sample_to_json(const SequenceSample& s);
SequenceSample sample_from_json(const nlohmann::json& j);

nlohmann::json pipeline_to_json(const seqdata::FeaturePipeline& p);
seqdata::FeaturePipeline pipeline_from_json(const nlohmann::json& j);

nlohmann::json dataset_to_json(const seqdata::EngineeredDataset& ds);
seqdata::EngineeredDataset dataset_from_json(const nlohmann::json& j);

}  // namespace ltlf::io
