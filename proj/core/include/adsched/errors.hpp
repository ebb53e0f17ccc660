#pragma once

#include <stdexcept>
#include <string>

namespace adsched {

enum class ErrorCode {
    NegativeBudget,
    NegativeBid,
    NonDecreasingPositiveSupply,
    ZeroSupplyBeforePositive,
    TooFewBidders,
    DuplicateBidderId,
    NonPositiveCtr,
    BadRational,
    UnsortedInput,
    AllZeroSupply,
    Infeasible,
    InstanceTooLarge,
    ScheduleAuditFailed,
    BadInstanceFile,
    IoFailure,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace adsched
