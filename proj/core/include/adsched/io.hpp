#pragma once

#include <adsched/mechanisms.hpp>
#include <adsched/model.hpp>

#include <filesystem>
#include <string>

namespace adsched {

/// Instance files are JSON: {"bidders": [{"id", "budget", "max_cpc",
/// "ctr"?}], "slots": ["clicks", ...]} with every rational written as a
/// canonical "p/q" string (decimal strings and plain JSON integers are
/// accepted on input, and "inf" marks an unlimited max_cpc). Deserialized
/// values round-trip bit-identically. Throws Error{BadInstanceFile} on
/// malformed content; validation errors propagate from validate_instance.
std::string instance_to_text(const Instance& instance);
Instance instance_from_text(const std::string& text);

Instance load_instance(const std::filesystem::path& path);   // IoFailure if unreadable
void save_instance(const Instance& instance, const std::filesystem::path& path);

/// Outcome files are JSON with blocks, per-bidder results and revenue,
/// every rational carried both exactly and as a decimal approximation
/// (the decimal fields are display-only and ignored on input).
std::string outcome_to_text(const Outcome& outcome, int precision = 6);
Outcome outcome_from_text(const std::string& text);

void save_outcome(const Outcome& outcome, const std::filesystem::path& path, int precision = 6);
Outcome load_outcome(const std::filesystem::path& path);

void save_schedule(const Schedule& schedule, const std::filesystem::path& path);
Schedule load_schedule(const std::filesystem::path& path);

} // namespace adsched
