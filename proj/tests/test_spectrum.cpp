#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "hyplen/curves.hpp"
#include "hyplen/deform.hpp"
#include "hyplen/io.hpp"
#include "hyplen/spectrum.hpp"

using namespace hyplen;
using std::numbers::pi;

TEST_CASE("identical spectra are indistinguishable at truncation") {
    const TruncatedLengthSpectrum a = truncated_spectrum(cyclic_representation(2.0), 4);
    const SpectrumComparison cmp = compare(a, a);
    CHECK(cmp.verdict == SpectrumVerdict::indistinguishable_at_truncation);
    CHECK_FALSE(cmp.witness.has_value());
}

TEST_CASE("cyclic groups with different lengths separate at the first entry") {
    const TruncatedLengthSpectrum a = truncated_spectrum(cyclic_representation(2.0), 3);
    const TruncatedLengthSpectrum b = truncated_spectrum(cyclic_representation(2.5), 3);
    const SpectrumComparison cmp = compare(a, b);
    CHECK(cmp.verdict == SpectrumVerdict::distinct);
    REQUIRE(cmp.witness.has_value());
    CHECK(cmp.witness->index == 0);
    CHECK(cmp.witness->length_a == doctest::Approx(2.0));
    CHECK(cmp.witness->length_b == doctest::Approx(2.5));

    // symmetric verdicts
    const SpectrumComparison rev = compare(b, a);
    CHECK(rev.verdict == cmp.verdict);
    CHECK(rev.witness->index == cmp.witness->index);
}

TEST_CASE("deformation endpoints separate") {
    const RepresentationPath path(
        perpendicular_pair(6.0, 6.0),
        {[](double t) { return 6.0 + t; }, [](double) { return 6.0; }});
    const TruncatedLengthSpectrum s0 = truncated_spectrum(representation_at(path, 0.0), 3);
    const TruncatedLengthSpectrum s1 = truncated_spectrum(representation_at(path, 1.0), 3);
    const SpectrumComparison cmp = compare(s0, s1);
    CHECK(cmp.verdict == SpectrumVerdict::distinct);
    REQUIRE(cmp.witness.has_value());
    CHECK(cmp.witness->index == 1);
    CHECK(std::abs(cmp.witness->length_a - cmp.witness->length_b) >= 1.0 - 1e-6);

    // verdicts are stable under deeper truncation
    const TruncatedLengthSpectrum d0 = truncated_spectrum(representation_at(path, 0.0), 5);
    const TruncatedLengthSpectrum d1 = truncated_spectrum(representation_at(path, 1.0), 5);
    CHECK(compare(d0, d1).verdict == SpectrumVerdict::distinct);
}

TEST_CASE("constant path is indistinguishable") {
    const RepresentationPath path(
        perpendicular_pair(6.0, 6.0),
        {[](double) { return 6.0; }, [](double) { return 6.0; }});
    const TruncatedLengthSpectrum s0 = truncated_spectrum(representation_at(path, 0.0), 4);
    const TruncatedLengthSpectrum s1 = truncated_spectrum(representation_at(path, 1.0), 4);
    CHECK(compare(s0, s1).verdict == SpectrumVerdict::indistinguishable_at_truncation);
}

TEST_CASE("mismatched truncation is rejected") {
    const TruncatedLengthSpectrum a = truncated_spectrum(cyclic_representation(2.0), 3);
    const TruncatedLengthSpectrum b = truncated_spectrum(cyclic_representation(2.0), 4);
    CHECK_THROWS_AS(compare(a, b), std::invalid_argument);
}

TEST_CASE("triviality classification") {
    CHECK(classify_trivial(ModelSurface::Disc()));
    CHECK(classify_trivial(ModelSurface::PuncturedDisc()));
    CHECK_FALSE(classify_trivial(ModelSurface::Annulus(0.5)));
    CHECK(classify_trivial(ModelSurface::Plane()));
    CHECK(classify_trivial(ModelSurface::PuncturedPlane()));

    CHECK(classify_triviality(ModelSurface::Disc()) == TrivialityKind::trivial_hyperbolic);
    CHECK(classify_triviality(ModelSurface::Annulus(0.2)) == TrivialityKind::nontrivial);
    CHECK(classify_triviality(ModelSurface::Plane()) == TrivialityKind::zero_nonhyperbolic);
}

TEST_CASE("triviality witnesses" * doctest::timeout(120)) {
    // annulus: the winding-1 class has positive stable length 2 pi^2 / log(1/r)
    const double r = 0.5;
    const StableLength sl = stable_length(make_circle(ModelSurface::Annulus(r), 0.7, 192));
    CHECK(sl.attained);
    CHECK(sl.value > 0.0);
    CHECK(sl.value == doctest::Approx(2.0 * pi * pi / std::log(1.0 / r)).epsilon(1e-5));

    // punctured disc: the winding-1 class escapes below any fixed epsilon
    const ShorteningResult esc = shorten(make_circle(ModelSurface::PuncturedDisc(), 0.4, 96));
    CHECK(esc.status == ShortenStatus::escaped_to_puncture);
    CHECK(esc.length_trace.back() < 0.1);
}

TEST_CASE("spectrum and comparison serialization") {
    const TruncatedLengthSpectrum spec = truncated_spectrum(perpendicular_pair(6.0, 6.0), 2);
    const nlohmann::ordered_json j = spectrum_to_json(spec);
    CHECK(j["k"] == 2);
    CHECK(j["max_word_length"] == 2);
    const TruncatedLengthSpectrum back = spectrum_from_json(nlohmann::json::parse(j.dump()));
    REQUIRE(back.entries.size() == spec.entries.size());
    for (size_t i = 0; i < spec.entries.size(); ++i) {
        // persisted values carry 12 significant digits
        CHECK(back.entries[i].length ==
              doctest::Approx(spec.entries[i].length).epsilon(1e-11));
        CHECK(back.entries[i].word == spec.entries[i].word);
    }

    std::ostringstream csv;
    spectrum_to_csv(csv, spec);
    CHECK(csv.str().starts_with("word,length\n"));

    const SpectrumComparison cmp = compare(spec, spec);
    const nlohmann::ordered_json cj = comparison_to_json(cmp);
    CHECK(cj["verdict"] == "indistinguishable_at_truncation");
    CHECK(cj["witness"].is_null());
}

TEST_CASE("format_number uses 12 significant digits") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(pi) == "3.14159265359");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1e-9) == "1e-09");
}
