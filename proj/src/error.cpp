#include "adjclose/error.hpp"

namespace adjclose {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedRow: return "MalformedRow";
        case ErrorCode::DuplicateDate: return "DuplicateDate";
        case ErrorCode::EmptyFile: return "EmptyFile";
        case ErrorCode::UnknownKind: return "UnknownKind";
        case ErrorCode::Io: return "Io";
        case ErrorCode::SinkWrite: return "SinkWrite";
        case ErrorCode::InvalidHistory: return "InvalidHistory";
        case ErrorCode::NonPositiveExPrice: return "NonPositiveExPrice";
        case ErrorCode::BaseDateNotInHistory: return "BaseDateNotInHistory";
        case ErrorCode::DateNotInSeries: return "DateNotInSeries";
        case ErrorCode::StartNotBeforeEnd: return "StartNotBeforeEnd";
        case ErrorCode::ExDateNotTradingDay: return "ExDateNotTradingDay";
        case ErrorCode::ExDateBeforeHistoryStart: return "ExDateBeforeHistoryStart";
        case ErrorCode::DuplicateSplit: return "DuplicateSplit";
        case ErrorCode::MissingProviderColumn: return "MissingProviderColumn";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedRow:
        case ErrorCode::DuplicateDate:
        case ErrorCode::EmptyFile:
        case ErrorCode::UnknownKind:
        case ErrorCode::Io:
        case ErrorCode::SinkWrite:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorCode code, const std::string& message, std::optional<TradingDate> date)
    : std::runtime_error(message), code_(code), date_(date) {}

Error Error::at_line(ErrorCode code, std::size_t line, const std::string& message) {
    Error error{code, "line " + std::to_string(line) + ": " + message};
    error.line_ = line;
    return error;
}

}  // namespace adjclose
