#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyplen/metrics.hpp"
#include "hyplen/moebius.hpp"

namespace hyplen {

/// Word over {x_1, x_1^-1, ..., x_k, x_k^-1}; letter +i stands for x_i,
/// -i for its inverse (1-based).
struct Word {
    std::vector<int16_t> letters;

    bool operator==(const Word&) const = default;
};

/// Letter order x_1 < x_1^-1 < x_2 < x_2^-1 < ... used for canonical forms.
int letter_rank(int16_t letter);
bool word_less(const Word& a, const Word& b);

Word cyclic_reduce(Word w);
Word word_inverse(const Word& w);

/// Canonical conjugacy-class representative: lexicographically least among
/// all cyclic rotations of the cyclically reduced word and of its inverse.
Word canonical_conjugacy_class(const Word& w);

/// Rendering: a,A,b,B,... for k <= 26, otherwise x1,X1,x2,...
std::string word_to_string(const Word& w, int k);
Word word_from_string(const std::string& text, int k);

/// One canonical representative per orbit of cyclically reduced words under
/// rotation and inversion, lengths 1..max_word_length, sorted by
/// (length, letter order). The identity class is excluded.
std::vector<Word> enumerate_conjugacy_classes(int k, int max_word_length);

struct SchottkyDisc {
    Complex center;
    double radius;
};

/// Free discrete subgroup of PSL(2,R) given by k hyperbolic generators;
/// optional ping-pong discs in the unit-disc model, paired (D_i^-, D_i^+)
/// with g_i mapping the exterior of D_i^- onto the interior of D_i^+.
struct SchottkyRepresentation {
    std::vector<MoebiusTransform> generators;
    std::optional<std::vector<std::pair<SchottkyDisc, SchottkyDisc>>> discs;

    explicit SchottkyRepresentation(
        std::vector<MoebiusTransform> generators,
        std::optional<std::vector<std::pair<SchottkyDisc, SchottkyDisc>>> discs = std::nullopt);

    int rank() const { return static_cast<int>(generators.size()); }
};

/// Standard two-generator representation: translations of lengths l1, l2
/// along perpendicular axes through the origin of the disc model.
SchottkyRepresentation perpendicular_pair(double l1, double l2);

/// Rank-1 representation generated by the translation of length l along the
/// disc-model real axis.
SchottkyRepresentation cyclic_representation(double ell);

SchottkyRepresentation conjugate_representation(const MoebiusTransform& h,
                                                const SchottkyRepresentation& rep);

struct PingPongReport {
    bool certified;
    double min_separation;        // min over disc pairs of distance - radius sum
    double max_pairing_residual;  // boundary-sample residual of the pairing maps
    std::optional<std::pair<int, int>> overlapping;  // indices into the 2k disc list
    std::string detail;
};

/// Derive ping-pong discs as isometric circles of the generators and their
/// inverses; a seeded random elliptic conjugation is retried when a
/// generator fixes the required boundary point.
std::vector<std::pair<SchottkyDisc, SchottkyDisc>> derive_discs(
    const SchottkyRepresentation& rep, uint64_t seed = 0);

/// Ping-pong certificate: discs pairwise disjoint (margin 1e-9) and each
/// pairing map verified on >= boundary_samples boundary points.
PingPongReport ping_pong_certificate(const SchottkyRepresentation& rep,
                                     int boundary_samples = 64, uint64_t seed = 0);

/// Left-to-right product of the generators named by the word; compensated
/// (double-double) accumulation for words longer than 12 letters.
MoebiusTransform evaluate_word(const SchottkyRepresentation& rep, const Word& w);

struct SpectrumEntry {
    double length;
    Word word;
};

struct TruncatedLengthSpectrum {
    int k;
    int max_word_length;
    double tolerance;
    std::vector<SpectrumEntry> entries;  // ascending by (length, word)
};

/// Raised when the ping-pong certificate fails or a word evaluates
/// non-hyperbolic (which contradicts free-and-discrete).
struct CertificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Translation lengths of all canonical conjugacy classes up to
/// max_word_length. Requires a valid certificate unless require_certificate
/// is false; aborts with CertificationError if any word is non-hyperbolic.
TruncatedLengthSpectrum truncated_spectrum(const SchottkyRepresentation& rep,
                                           int max_word_length,
                                           bool require_certificate = true,
                                           uint64_t seed = 0);

/// Annulus whose core geodesic has length ell: quotient of the half-plane by
/// <z -> e^ell z> is A(r,1) with r = exp(-2 pi^2 / ell).
ModelSurface annulus_from_cyclic(double ell);

}  // namespace hyplen
