#include "hyplen/io.hpp"

#include <cstdio>
#include <cstdlib>

namespace hyplen {

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

double rounded12(double value) {
    return std::strtod(format_number(value).c_str(), nullptr);
}

void write_trace_csv(std::ostream& out, const std::string& col_a, const std::string& col_b,
                     const std::vector<std::pair<double, double>>& rows) {
    out << col_a << ',' << col_b << '\n';
    for (const auto& [a, b] : rows) {
        out << format_number(a) << ',' << format_number(b) << '\n';
    }
}

void spectrum_to_csv(std::ostream& out, const TruncatedLengthSpectrum& spectrum) {
    out << "word,length\n";
    for (const auto& entry : spectrum.entries) {
        out << word_to_string(entry.word, spectrum.k) << ',' << format_number(entry.length)
            << '\n';
    }
}

nlohmann::ordered_json spectrum_to_json(const TruncatedLengthSpectrum& spectrum) {
    nlohmann::ordered_json j;
    j["k"] = spectrum.k;
    j["max_word_length"] = spectrum.max_word_length;
    j["tolerance"] = spectrum.tolerance;
    auto entries = nlohmann::ordered_json::array();
    for (const auto& entry : spectrum.entries) {
        entries.push_back({{"word", word_to_string(entry.word, spectrum.k)},
                           {"length", rounded12(entry.length)}});
    }
    j["entries"] = std::move(entries);
    return j;
}

TruncatedLengthSpectrum spectrum_from_json(const nlohmann::json& j) {
    TruncatedLengthSpectrum spectrum{j.at("k").get<int>(), j.at("max_word_length").get<int>(),
                                     j.at("tolerance").get<double>(), {}};
    for (const auto& entry : j.at("entries")) {
        spectrum.entries.push_back(
            {entry.at("length").get<double>(),
             word_from_string(entry.at("word").get<std::string>(), spectrum.k)});
    }
    return spectrum;
}

nlohmann::ordered_json comparison_to_json(const SpectrumComparison& cmp) {
    nlohmann::ordered_json j;
    j["verdict"] = cmp.verdict == SpectrumVerdict::distinct ? "distinct"
                                                            : "indistinguishable_at_truncation";
    if (cmp.witness) {
        j["witness"] = {{"index", cmp.witness->index},
                        {"length_a", rounded12(cmp.witness->length_a)},
                        {"length_b", rounded12(cmp.witness->length_b)}};
    } else {
        j["witness"] = nullptr;
    }
    j["tolerance"] = cmp.tolerance;
    return j;
}

}  // namespace hyplen
