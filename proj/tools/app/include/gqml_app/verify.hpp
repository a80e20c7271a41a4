#pragma once

#include <cstdint>

#include "gqml/spec_io.hpp"

namespace gqml::app {

/// Runs every invariant suite on one spec. The report lists, per suite, the
/// number of checks, the failures and the worst slack (smallest margin by
/// which an inequality held; negative when violated). No timings or other
/// run-dependent data are included, so equal seeds give identical reports.
Json verify_suite(const GroupoidSpec& spec, std::uint64_t seed, int threads = 1);

bool verify_passed(const Json& report);

}  // namespace gqml::app
