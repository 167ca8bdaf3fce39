#pragma once

#include <optional>

#include "hyplen/groups.hpp"

namespace hyplen {

enum class SpectrumVerdict { distinct, indistinguishable_at_truncation };

struct SpectrumWitness {
    int index;
    double length_a;
    double length_b;
};

struct SpectrumComparison {
    SpectrumVerdict verdict;
    std::optional<SpectrumWitness> witness;
    double tolerance;
};

/// Sorted entrywise comparison of two truncated spectra: distinct on the
/// first mismatch beyond tolerance (or on differing entry counts), otherwise
/// indistinguishable_at_truncation. The invariant only ever separates; it
/// never certifies conjugacy. Throws std::invalid_argument on mismatched
/// truncation depth.
SpectrumComparison compare(const TruncatedLengthSpectrum& a, const TruncatedLengthSpectrum& b,
                           double tolerance = 1e-6);

enum class TrivialityKind { trivial_hyperbolic, nontrivial, zero_nonhyperbolic };

/// True when every closed curve shortens arbitrarily (spectrum is {0}):
/// Disc and PuncturedDisc among the hyperbolic models (the thrice-punctured
/// sphere belongs to this list but is not a ModelSurface here), plus the
/// non-hyperbolic Plane/PuncturedPlane where the metric vanishes outright.
/// False exactly for the annuli.
bool classify_trivial(const ModelSurface& surface);

TrivialityKind classify_triviality(const ModelSurface& surface);

}  // namespace hyplen
