#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ltlf {

/// One multi-step training or test record.
///
/// `steps[t]` is the feature vector for forecast year `forecast_years[t]`.
/// `targets` holds one value (final-year peak, many-to-one) or one value per
/// forecast year (many-to-many).
struct SequenceSample {
    int record_id = 0;
    std::string feeder_id;
    std::vector<int> forecast_years;
    std::vector<Eigen::VectorXd> steps;
    std::vector<double> targets;
};

}  // namespace ltlf
