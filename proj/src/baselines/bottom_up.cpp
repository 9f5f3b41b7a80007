#include "ltlf/baselines.hpp"
#include "ltlf/error.hpp"

namespace ltlf::baselines {

BottomUpForecast bottom_up_forecast(double prev_peak, double large_customer_net_change) {
    if (!(prev_peak > 0.0)) throw DomainError("previous-year peak must be positive");
    BottomUpForecast f;
    f.amperes = prev_peak + large_customer_net_change;
    f.implausible = f.amperes <= 0.0;
    return f;
}

}  // namespace ltlf::baselines
