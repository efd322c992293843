#pragma once

#include "adjclose/date.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace adjclose {

enum class ErrorCode {
    // input: unreadable or unparseable data
    MalformedRow,
    DuplicateDate,
    EmptyFile,
    UnknownKind,
    Io,
    SinkWrite,
    // domain: data parsed but violates a computation's precondition
    InvalidHistory,
    NonPositiveExPrice,
    BaseDateNotInHistory,
    DateNotInSeries,
    StartNotBeforeEnd,
    ExDateNotTradingDay,
    ExDateBeforeHistoryStart,
    DuplicateSplit,
    MissingProviderColumn,
    InvalidArgument,
};

const char* to_string(ErrorCode code);

/// True for the input/IO family of errors (CLI exit status 1).
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::optional<TradingDate> date = std::nullopt);

    /// Parse errors always carry the 1-based line number of the offending input line.
    static Error at_line(ErrorCode code, std::size_t line, const std::string& message);

    ErrorCode code() const noexcept { return code_; }
    std::optional<std::size_t> line() const noexcept { return line_; }
    std::optional<TradingDate> date() const noexcept { return date_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> line_;
    std::optional<TradingDate> date_;
};

}  // namespace adjclose
