#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "hyplen/groups.hpp"
#include "hyplen/metrics.hpp"

using namespace hyplen;
using std::numbers::pi;

namespace {

// Brute-force orbit count, independent of the library's canonicalization:
// generate every cyclically reduced string, close each orbit explicitly
// under rotation and inversion, count distinct orbits.
int brute_force_class_count(int k, int len) {
    std::vector<int> letters;
    for (int i = 1; i <= k; ++i) {
        letters.push_back(i);
        letters.push_back(-i);
    }
    std::set<std::vector<int>> seen;
    int orbits = 0;
    std::vector<int> w(len);
    auto emit = [&](const std::vector<int>& word) {
        if (seen.count(word)) return;
        // orbit closure
        std::vector<std::vector<int>> orbit;
        std::vector<int> r = word;
        for (int s = 0; s < len; ++s) {
            orbit.push_back(r);
            std::vector<int> inv(len);
            for (int i = 0; i < len; ++i) inv[i] = -r[len - 1 - i];
            orbit.push_back(inv);
            std::rotate(r.begin(), r.begin() + 1, r.end());
        }
        for (const auto& o : orbit) seen.insert(o);
        ++orbits;
    };
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == len) {
            if (len == 1 || w.front() != -w.back()) emit(w);
            return;
        }
        for (int l : letters) {
            if (pos > 0 && l == -w[pos - 1]) continue;
            w[pos] = l;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return orbits;
}

std::set<std::string> class_strings(int k, int max_len) {
    std::set<std::string> out;
    for (const Word& w : enumerate_conjugacy_classes(k, max_len)) {
        out.insert(word_to_string(w, k));
    }
    return out;
}

}  // namespace

TEST_CASE("word canonicalization") {
    const Word w{{1, 2, -1}};  // a b A ~ b
    const Word canon = canonical_conjugacy_class(w);
    CHECK(word_to_string(canon, 2) == "b");
    // idempotent
    CHECK(canonical_conjugacy_class(canon) == canon);
    // no cancelling pairs, including wrap-around
    const Word wrap{{-1, 2, 2, 1}};  // A b b a ~ b b
    CHECK(word_to_string(canonical_conjugacy_class(wrap), 2) == "bb");
    // inverse identified
    const Word inv{{-1}};
    CHECK(word_to_string(canonical_conjugacy_class(inv), 2) == "a");
    // round trip through rendering
    CHECK(word_from_string("aBa", 2).letters == std::vector<int16_t>({1, -2, 1}));
}

TEST_CASE("conjugacy class enumeration: small cases") {
    CHECK(class_strings(2, 1) == std::set<std::string>{"a", "b"});
    CHECK(class_strings(2, 2) ==
          std::set<std::string>{"a", "b", "aa", "bb", "ab", "aB"});
    CHECK(class_strings(1, 3) == std::set<std::string>{"a", "aa", "aaa"});
}

TEST_CASE("class counts match brute-force orbit enumeration") {
    for (int len = 1; len <= 4; ++len) {
        const auto classes = enumerate_conjugacy_classes(2, len);
        int at_len = 0;
        for (const Word& w : classes) {
            if (static_cast<int>(w.letters.size()) == len) ++at_len;
        }
        CHECK(at_len == brute_force_class_count(2, len));
    }
}

TEST_CASE("ping-pong certification") {
    const SchottkyRepresentation good = perpendicular_pair(6.0, 6.0);
    const PingPongReport ok = ping_pong_certificate(good);
    CHECK(ok.certified);
    CHECK(ok.min_separation > 1e-9);
    CHECK(ok.max_pairing_residual <= 1e-9);

    const SchottkyRepresentation bad = perpendicular_pair(0.1, 0.1);
    const PingPongReport fail = ping_pong_certificate(bad);
    CHECK_FALSE(fail.certified);
    REQUIRE(fail.overlapping.has_value());
    CHECK(fail.detail.find("overlap") != std::string::npos);

    const SchottkyRepresentation cyclic = cyclic_representation(1.5);
    CHECK(ping_pong_certificate(cyclic).certified);
}

TEST_CASE("cyclic spectrum: lengths n * ell") {
    const SchottkyRepresentation rep = cyclic_representation(2.0);
    const TruncatedLengthSpectrum spec = truncated_spectrum(rep, 3);
    REQUIRE(spec.entries.size() == 3);
    CHECK(spec.entries[0].length == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(spec.entries[1].length == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(spec.entries[2].length == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("two-generator word lengths against the direct matrix oracle") {
    const double l1 = 6.0, l2 = 6.0;
    const SchottkyRepresentation rep = perpendicular_pair(l1, l2);
    const MoebiusTransform product = compose(rep.generators[0], rep.generators[1]);
    const double expected = 2.0 * std::acosh(std::abs(product.trace()) / 2.0);
    const TruncatedLengthSpectrum spec = truncated_spectrum(rep, 2);
    bool found = false;
    for (const auto& e : spec.entries) {
        if (word_to_string(e.word, 2) == "ab") {
            found = true;
            CHECK(e.length == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    CHECK(found);
    // every entry satisfies the trace identity to 1e-10
    for (const auto& e : spec.entries) {
        const MoebiusTransform m = evaluate_word(rep, e.word);
        CHECK(e.length ==
              doctest::Approx(2.0 * std::acosh(std::abs(m.trace()) / 2.0)).epsilon(1e-10));
    }
}

TEST_CASE("cyclic group vs annulus core length") {
    for (const double ell : {1.0, 2.0, 2.0 * pi * pi}) {
        const ModelSurface ann = annulus_from_cyclic(ell);
        // metrics route: smooth circle length at the core radius
        const double core = std::sqrt(ann.inner);
        CHECK(circle_length(ann, core) == doctest::Approx(ell).epsilon(1e-9));
        // group route: first spectrum entry of the cyclic representation
        const TruncatedLengthSpectrum spec = truncated_spectrum(cyclic_representation(ell), 1);
        CHECK(spec.entries[0].length == doctest::Approx(ell).epsilon(1e-9));
        // closed-form composition
        CHECK(2.0 * pi * pi / std::log(1.0 / ann.inner) == doctest::Approx(ell).epsilon(1e-9));
    }
    CHECK(annulus_from_cyclic(2.0 * pi * pi).inner == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("spectrum conjugacy invariance") {
    const SchottkyRepresentation rep = perpendicular_pair(6.0, 5.0);
    const TruncatedLengthSpectrum base = truncated_spectrum(rep, 5);
    const MoebiusTransform h = MoebiusTransform::from_entries(1.3, 0.4, 0.2, 1.0);
    const SchottkyRepresentation moved = conjugate_representation(h, rep);
    const TruncatedLengthSpectrum conj = truncated_spectrum(moved, 5, false);
    REQUIRE(base.entries.size() == conj.entries.size());
    for (size_t i = 0; i < base.entries.size(); ++i) {
        CHECK(std::abs(base.entries[i].length - conj.entries[i].length) < 1e-9);
    }
}

TEST_CASE("spectrum orientation identification") {
    const SchottkyRepresentation rep = perpendicular_pair(6.0, 5.0);
    std::vector<MoebiusTransform> inverted;
    for (const auto& g : rep.generators) inverted.push_back(inverse(g));
    const SchottkyRepresentation rep_inv(inverted);
    const TruncatedLengthSpectrum a = truncated_spectrum(rep, 4);
    const TruncatedLengthSpectrum b = truncated_spectrum(rep_inv, 4);
    REQUIRE(a.entries.size() == b.entries.size());
    for (size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].length == doctest::Approx(b.entries[i].length).epsilon(1e-12));
    }
}

TEST_CASE("monotone refinement: deeper truncation only adds entries") {
    const SchottkyRepresentation rep = perpendicular_pair(6.0, 5.0);
    const TruncatedLengthSpectrum shallow = truncated_spectrum(rep, 3);
    const TruncatedLengthSpectrum deep = truncated_spectrum(rep, 4);
    CHECK(deep.entries.size() > shallow.entries.size());
    // multiset inclusion via counting matched entries in sorted order
    size_t j = 0;
    for (const auto& e : shallow.entries) {
        while (j < deep.entries.size() && deep.entries[j].length < e.length - 1e-12) ++j;
        REQUIRE(j < deep.entries.size());
        CHECK(deep.entries[j].length == doctest::Approx(e.length).epsilon(1e-12));
        ++j;
    }
}

TEST_CASE("spectrum aborts on non-hyperbolic words") {
    // same axis, opposite directions: a b evaluates to the identity
    const double e = std::exp(1.0);
    const SchottkyRepresentation rep({
        MoebiusTransform::from_entries(e, 0.0, 0.0, 1.0 / e),
        MoebiusTransform::from_entries(1.0 / e, 0.0, 0.0, e),
    });
    CHECK_FALSE(ping_pong_certificate(rep).certified);
    CHECK_THROWS_AS(truncated_spectrum(rep, 2), CertificationError);
    CHECK_THROWS_AS(truncated_spectrum(rep, 2, false), CertificationError);
}

TEST_CASE("compensated evaluation is stable for long words") {
    const SchottkyRepresentation rep = cyclic_representation(2.0);
    Word w;
    w.letters.assign(14, 1);  // a^14, forces the double-double path
    CHECK(translation_length(evaluate_word(rep, w)) == doctest::Approx(28.0).epsilon(1e-12));
}

TEST_CASE("default depth for the standard pair") {
    // cumulative class count to depth 8 pinned by the brute-force oracle
    int cumulative = 0;
    for (int len = 1; len <= 8; ++len) cumulative += brute_force_class_count(2, len);
    CHECK(cumulative == 693);
    const TruncatedLengthSpectrum spec = truncated_spectrum(perpendicular_pair(6.0, 6.0), 8);
    CHECK(static_cast<int>(spec.entries.size()) == cumulative);
    CHECK(std::is_sorted(spec.entries.begin(), spec.entries.end(),
                         [](const SpectrumEntry& a, const SpectrumEntry& b) {
                             return a.length < b.length;
                         }));
}
