#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyplen/groups.hpp"
#include "hyplen/spectrum.hpp"

namespace hyplen {

/// Decimal rendering with 12 significant digits; all persisted numbers go
/// through this so identical runs produce byte-identical files.
std::string format_number(double value);

/// The double nearest the 12-significant-digit decimal rendering; JSON
/// payloads carry these so dumps stay short and deterministic.
double rounded12(double value);

/// CSV trace with a two-column header, e.g. "t,value" or "iteration,length".
void write_trace_csv(std::ostream& out, const std::string& col_a, const std::string& col_b,
                     const std::vector<std::pair<double, double>>& rows);

void spectrum_to_csv(std::ostream& out, const TruncatedLengthSpectrum& spectrum);
nlohmann::ordered_json spectrum_to_json(const TruncatedLengthSpectrum& spectrum);
TruncatedLengthSpectrum spectrum_from_json(const nlohmann::json& j);

nlohmann::ordered_json comparison_to_json(const SpectrumComparison& cmp);

}  // namespace hyplen
