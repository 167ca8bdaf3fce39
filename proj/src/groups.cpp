#include "hyplen/groups.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

namespace hyplen {

namespace {

using std::numbers::pi;

// Double-double helpers for compensated 2x2 products of long words.
struct DD {
    double hi{0.0}, lo{0.0};
};

DD dd_from(double x) { return {x, 0.0}; }

DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    const DD t = two_sum(s.hi, s.lo);
    return t;
}

DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return two_sum(p.hi, p.lo);
}

struct DDMatrix {
    DD a, b, c, d;

    static DDMatrix from(const MoebiusTransform& m) {
        return {dd_from(m.a), dd_from(m.b), dd_from(m.c), dd_from(m.d)};
    }
    DDMatrix mul(const DDMatrix& o) const {
        return {dd_add(dd_mul(a, o.a), dd_mul(b, o.c)),
                dd_add(dd_mul(a, o.b), dd_mul(b, o.d)),
                dd_add(dd_mul(c, o.a), dd_mul(d, o.c)),
                dd_add(dd_mul(c, o.b), dd_mul(d, o.d))};
    }
};

std::vector<std::string> disc_labels(int k) {
    std::vector<std::string> labels;
    for (int i = 1; i <= k; ++i) {
        labels.push_back("D" + std::to_string(i) + "-");
        labels.push_back("D" + std::to_string(i) + "+");
    }
    return labels;
}

}  // namespace

int letter_rank(int16_t letter) {
    return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0);
}

bool word_less(const Word& a, const Word& b) {
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    for (size_t i = 0; i < a.letters.size(); ++i) {
        const int ra = letter_rank(a.letters[i]);
        const int rb = letter_rank(b.letters[i]);
        if (ra != rb) return ra < rb;
    }
    return false;
}

Word cyclic_reduce(Word w) {
    auto& v = w.letters;
    bool changed = true;
    while (changed && !v.empty()) {
        changed = false;
        // adjacent cancellations
        for (size_t i = 0; i + 1 < v.size();) {
            if (v[i] == -v[i + 1]) {
                v.erase(v.begin() + i, v.begin() + i + 2);
                changed = true;
                if (i > 0) --i;
            } else {
                ++i;
            }
        }
        // wrap-around cancellation
        while (v.size() >= 2 && v.front() == -v.back()) {
            v.erase(v.begin());
            v.pop_back();
            changed = true;
        }
    }
    return w;
}

Word word_inverse(const Word& w) {
    Word inv;
    inv.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        inv.letters.push_back(static_cast<int16_t>(-*it));
    }
    return inv;
}

Word canonical_conjugacy_class(const Word& w) {
    Word reduced = cyclic_reduce(w);
    const size_t n = reduced.letters.size();
    if (n == 0) return reduced;
    Word best = reduced;
    for (const Word& base : {reduced, word_inverse(reduced)}) {
        Word rot = base;
        for (size_t r = 0; r < n; ++r) {
            if (word_less(rot, best)) best = rot;
            std::rotate(rot.letters.begin(), rot.letters.begin() + 1, rot.letters.end());
        }
    }
    return best;
}

std::string word_to_string(const Word& w, int k) {
    std::string out;
    for (int16_t letter : w.letters) {
        const int i = std::abs(letter);
        if (k <= 26) {
            char c = static_cast<char>('a' + i - 1);
            out.push_back(letter > 0 ? c : static_cast<char>(std::toupper(c)));
        } else {
            out += (letter > 0 ? "x" : "X") + std::to_string(i);
        }
    }
    return out;
}

Word word_from_string(const std::string& text, int k) {
    Word w;
    size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (k <= 26 && std::isalpha(static_cast<unsigned char>(c)) && c != 'x' && c != 'X') {
            const int idx = std::tolower(static_cast<unsigned char>(c)) - 'a' + 1;
            if (idx < 1 || idx > k) {
                throw std::invalid_argument("word_from_string: letter out of range: " +
                                            std::string(1, c));
            }
            w.letters.push_back(static_cast<int16_t>(std::islower(static_cast<unsigned char>(c))
                                                         ? idx
                                                         : -idx));
            ++i;
        } else if (c == 'x' || c == 'X') {
            size_t j = i + 1;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j == i + 1) throw std::invalid_argument("word_from_string: missing index");
            const int idx = std::stoi(text.substr(i + 1, j - i - 1));
            if (idx < 1 || idx > k) {
                throw std::invalid_argument("word_from_string: index out of range");
            }
            w.letters.push_back(static_cast<int16_t>(c == 'x' ? idx : -idx));
            i = j;
        } else {
            throw std::invalid_argument("word_from_string: unexpected character");
        }
    }
    return w;
}

std::vector<Word> enumerate_conjugacy_classes(int k, int max_word_length) {
    if (k < 1 || max_word_length < 1) {
        throw std::invalid_argument("enumerate_conjugacy_classes: need k >= 1, length >= 1");
    }
    auto cmp = [](const Word& a, const Word& b) { return word_less(a, b); };
    std::set<Word, decltype(cmp)> classes(cmp);
    std::vector<int16_t> letters;
    for (int i = 1; i <= k; ++i) {
        letters.push_back(static_cast<int16_t>(i));
        letters.push_back(static_cast<int16_t>(-i));
    }
    Word current;
    auto dfs = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            if (current.letters.front() != -current.letters.back() ||
                current.letters.size() == 1) {
                classes.insert(canonical_conjugacy_class(current));
            }
            return;
        }
        for (int16_t l : letters) {
            if (!current.letters.empty() && l == -current.letters.back()) continue;
            current.letters.push_back(l);
            self(self, remaining - 1);
            current.letters.pop_back();
        }
    };
    for (int n = 1; n <= max_word_length; ++n) {
        dfs(dfs, n);
    }
    return {classes.begin(), classes.end()};
}

SchottkyRepresentation::SchottkyRepresentation(
    std::vector<MoebiusTransform> gens,
    std::optional<std::vector<std::pair<SchottkyDisc, SchottkyDisc>>> d)
    : generators(std::move(gens)), discs(std::move(d)) {
    if (generators.empty()) {
        throw std::invalid_argument("SchottkyRepresentation: need at least one generator");
    }
    for (size_t i = 0; i < generators.size(); ++i) {
        if (classify(generators[i]).tag != IsometryTag::hyperbolic) {
            throw std::invalid_argument("SchottkyRepresentation: generator " +
                                        std::to_string(i + 1) + " is not hyperbolic");
        }
    }
    if (discs && discs->size() != generators.size()) {
        throw std::invalid_argument("SchottkyRepresentation: need one disc pair per generator");
    }
}

SchottkyRepresentation perpendicular_pair(double l1, double l2) {
    const double e1 = std::exp(l1 / 2.0), e2 = std::exp(l2 / 2.0);
    // axis 1: real diameter of the disc (imaginary axis of the half-plane)
    const MoebiusTransform a = MoebiusTransform::from_entries(e1, 0.0, 0.0, 1.0 / e1);
    // axis 2: imaginary diameter (unit semicircle of the half-plane)
    const double ch = (e2 + 1.0 / e2) / 2.0, sh = (e2 - 1.0 / e2) / 2.0;
    const MoebiusTransform b = MoebiusTransform::from_entries(ch, sh, sh, ch);
    return SchottkyRepresentation({a, b});
}

SchottkyRepresentation cyclic_representation(double ell) {
    const double e = std::exp(ell / 2.0);
    return SchottkyRepresentation({MoebiusTransform::from_entries(e, 0.0, 0.0, 1.0 / e)});
}

SchottkyRepresentation conjugate_representation(const MoebiusTransform& h,
                                                const SchottkyRepresentation& rep) {
    std::vector<MoebiusTransform> gens;
    gens.reserve(rep.generators.size());
    for (const auto& g : rep.generators) gens.push_back(conjugate(h, g));
    return SchottkyRepresentation(std::move(gens));
}

std::vector<std::pair<SchottkyDisc, SchottkyDisc>> derive_discs(
    const SchottkyRepresentation& rep, uint64_t seed) {
    auto attempt = [](const SchottkyRepresentation& r)
        -> std::optional<std::vector<std::pair<SchottkyDisc, SchottkyDisc>>> {
        std::vector<std::pair<SchottkyDisc, SchottkyDisc>> discs;
        for (const auto& g : r.generators) {
            const DiscMatrix m = disc_matrix(g);
            if (std::abs(m.beta) < 1e-14) return std::nullopt;
            const IsometricCircle minus = isometric_circle(m);
            const IsometricCircle plus = isometric_circle(disc_inverse(m));
            discs.push_back({SchottkyDisc{minus.center, minus.radius},
                             SchottkyDisc{plus.center, plus.radius}});
        }
        return discs;
    };
    if (auto discs = attempt(rep)) return *discs;
    // A generator fixes the disc center (beta = 0): conjugate the whole
    // representation by a seeded random hyperbolic move and retry.
    std::mt19937_64 rng(seed == 0 ? 0x9e3779b97f4a7c15ull : seed);
    std::uniform_real_distribution<double> uni(0.2, 1.0);
    for (int tries = 0; tries < 16; ++tries) {
        const double u = uni(rng);
        const MoebiusTransform h = MoebiusTransform::from_entries(1.0, u, 0.0, 1.0);
        const SchottkyRepresentation moved = conjugate_representation(h, rep);
        if (auto discs = attempt(moved)) return *discs;
    }
    throw std::domain_error("derive_discs: isometric circles undefined for this representation");
}

PingPongReport ping_pong_certificate(const SchottkyRepresentation& rep, int boundary_samples,
                                     uint64_t seed) {
    std::vector<std::pair<SchottkyDisc, SchottkyDisc>> pairs =
        rep.discs ? *rep.discs : derive_discs(rep, seed);
    const int k = rep.rank();
    std::vector<SchottkyDisc> flat;
    for (const auto& [dm, dp] : pairs) {
        flat.push_back(dm);
        flat.push_back(dp);
    }
    const std::vector<std::string> labels = disc_labels(k);

    PingPongReport report{true, std::numeric_limits<double>::infinity(), 0.0, std::nullopt, ""};
    for (size_t i = 0; i < flat.size(); ++i) {
        for (size_t j = i + 1; j < flat.size(); ++j) {
            const double gap =
                std::abs(flat[i].center - flat[j].center) - flat[i].radius - flat[j].radius;
            if (gap < report.min_separation) report.min_separation = gap;
            if (!(gap > 1e-9) && !report.overlapping) {
                report.certified = false;
                report.overlapping = {static_cast<int>(i), static_cast<int>(j)};
                report.detail = "discs " + labels[i] + " and " + labels[j] + " overlap (gap " +
                                std::to_string(gap) + ")";
            }
        }
    }

    // Pairing maps: g_i takes the boundary of D_i^- onto the boundary of
    // D_i^+ and an exterior point (the disc center 0) into D_i^+.
    for (int i = 0; i < k && report.certified; ++i) {
        const DiscMatrix m = disc_matrix(rep.generators[i]);
        const auto& [dm, dp] = pairs[i];
        for (int t = 0; t < boundary_samples; ++t) {
            const Complex w = dm.center + std::polar(dm.radius, 2.0 * pi * t / boundary_samples);
            const Complex image = apply_disc(m, w);
            const double residual = std::abs(std::abs(image - dp.center) - dp.radius);
            report.max_pairing_residual = std::max(report.max_pairing_residual, residual);
            if (!(residual <= 1e-9)) {
                report.certified = false;
                report.detail = "pairing map of generator " + std::to_string(i + 1) +
                                " misses the target boundary (residual " +
                                std::to_string(residual) + ")";
                break;
            }
        }
        if (report.certified) {
            const Complex image0 = apply_disc(m, Complex{0.0, 0.0});
            if (!(std::abs(image0 - dp.center) < dp.radius)) {
                report.certified = false;
                report.detail = "generator " + std::to_string(i + 1) +
                                " does not map the disc exterior into D+";
            }
        }
    }
    if (report.certified) {
        report.detail = "ping-pong certified: " + std::to_string(2 * k) +
                        " pairwise disjoint discs, pairing residual " +
                        std::to_string(report.max_pairing_residual);
    }
    return report;
}

MoebiusTransform evaluate_word(const SchottkyRepresentation& rep, const Word& w) {
    if (w.letters.empty()) return MoebiusTransform::identity();
    for (int16_t l : w.letters) {
        if (l == 0 || std::abs(l) > rep.rank()) {
            throw std::invalid_argument("evaluate_word: letter out of range");
        }
    }
    auto factor = [&](int16_t l) {
        const MoebiusTransform& g = rep.generators[std::abs(l) - 1];
        return l > 0 ? g : inverse(g);
    };
    // The raw product of det-1 factors keeps det = 1 to relative rounding;
    // re-normalizing by the evaluated determinant would cancel
    // catastrophically once entries reach e^{|word| l / 2}.
    if (w.letters.size() <= 12) {
        MoebiusTransform acc = factor(w.letters.front());
        for (size_t i = 1; i < w.letters.size(); ++i) {
            const MoebiusTransform f = factor(w.letters[i]);
            acc = MoebiusTransform::from_normalized_entries(
                acc.a * f.a + acc.b * f.c, acc.a * f.b + acc.b * f.d,
                acc.c * f.a + acc.d * f.c, acc.c * f.b + acc.d * f.d);
        }
        return acc;
    }
    // traces of long products lose digits; accumulate in double-double
    DDMatrix acc = DDMatrix::from(factor(w.letters.front()));
    for (size_t i = 1; i < w.letters.size(); ++i) {
        acc = acc.mul(DDMatrix::from(factor(w.letters[i])));
    }
    return MoebiusTransform::from_normalized_entries(acc.a.hi + acc.a.lo, acc.b.hi + acc.b.lo,
                                                     acc.c.hi + acc.c.lo, acc.d.hi + acc.d.lo);
}

TruncatedLengthSpectrum truncated_spectrum(const SchottkyRepresentation& rep,
                                           int max_word_length, bool require_certificate,
                                           uint64_t seed) {
    if (require_certificate) {
        const PingPongReport report = ping_pong_certificate(rep, 64, seed);
        if (!report.certified) {
            throw CertificationError("truncated_spectrum: representation not certified: " +
                                     report.detail);
        }
    }
    TruncatedLengthSpectrum spectrum{rep.rank(), max_word_length, 1e-10, {}};
    for (const Word& w : enumerate_conjugacy_classes(rep.rank(), max_word_length)) {
        const MoebiusTransform m = evaluate_word(rep, w);
        const IsometryClass cls = classify(m);
        if (cls.tag != IsometryTag::hyperbolic) {
            throw CertificationError(
                "truncated_spectrum: word " + word_to_string(w, rep.rank()) +
                " evaluates non-hyperbolic (|trace| = " + std::to_string(std::abs(m.trace())) +
                "); the representation is not free and discrete");
        }
        spectrum.entries.push_back({cls.translation_length, w});
    }
    std::sort(spectrum.entries.begin(), spectrum.entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) {
                  if (a.length != b.length) return a.length < b.length;
                  return word_less(a.word, b.word);
              });
    return spectrum;
}

ModelSurface annulus_from_cyclic(double ell) {
    if (!(ell > 0.0)) {
        throw std::invalid_argument("annulus_from_cyclic: length must be positive");
    }
    return ModelSurface::Annulus(std::exp(-2.0 * pi * pi / ell));
}

}  // namespace hyplen
