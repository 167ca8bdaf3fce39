#include "hyplen/spectrum.hpp"

#include <cmath>

namespace hyplen {

SpectrumComparison compare(const TruncatedLengthSpectrum& a, const TruncatedLengthSpectrum& b,
                           double tolerance) {
    if (a.max_word_length != b.max_word_length) {
        throw std::invalid_argument("compare: spectra have different truncation depths");
    }
    const size_t n = std::min(a.entries.size(), b.entries.size());
    for (size_t i = 0; i < n; ++i) {
        const double la = a.entries[i].length;
        const double lb = b.entries[i].length;
        if (std::abs(la - lb) > tolerance) {
            return {SpectrumVerdict::distinct,
                    SpectrumWitness{static_cast<int>(i), la, lb}, tolerance};
        }
    }
    if (a.entries.size() != b.entries.size()) {
        // different class counts (different rank at equal truncation)
        const bool a_longer = a.entries.size() > b.entries.size();
        const double next = a_longer ? a.entries[n].length : b.entries[n].length;
        return {SpectrumVerdict::distinct,
                SpectrumWitness{static_cast<int>(n), a_longer ? next : 0.0,
                                a_longer ? 0.0 : next},
                tolerance};
    }
    return {SpectrumVerdict::indistinguishable_at_truncation, std::nullopt, tolerance};
}

TrivialityKind classify_triviality(const ModelSurface& surface) {
    switch (surface.tag) {
        case SurfaceTag::disc:
        case SurfaceTag::punctured_disc:
            return TrivialityKind::trivial_hyperbolic;
        case SurfaceTag::annulus:
            return TrivialityKind::nontrivial;
        case SurfaceTag::plane:
        case SurfaceTag::punctured_plane:
            return TrivialityKind::zero_nonhyperbolic;
    }
    return TrivialityKind::nontrivial;
}

bool classify_trivial(const ModelSurface& surface) {
    return classify_triviality(surface) != TrivialityKind::nontrivial;
}

}  // namespace hyplen
