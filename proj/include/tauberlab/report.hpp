#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "tauberlab/asymptotics.hpp"
#include "tauberlab/classical.hpp"

namespace tauberlab::report {

/// Round to 12 significant digits so structured reports are stable fixtures.
double round12(double v);

/// Shortest decimal that round-trips to the same double.
std::string exact(double v);

/// Structured text (JSON) rendering of an equivalence run. Sections: input,
/// params, samples, checkpoints, fit, inverse, checks, verdict.
std::string render_equivalence(const EquivalenceReport& r,
                               const std::optional<ClassicalSpec>& spec = std::nullopt);

/// CSV with header psi,s,log_f,prediction_leading,prediction_corrected,ratio.
void write_csv(std::ostream& out, std::span<const EquivalenceRow> rows);

/// Writes text to path, throwing IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace tauberlab::report
