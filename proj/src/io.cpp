#include "fftd/io.hpp"

#include <json.hpp>

#include <algorithm>

namespace fftd {

using nlohmann::json;

void to_json(json& j, const FractionText& f) { j = json{{"num", f.num}, {"den", f.den}}; }
void from_json(const json& j, FractionText& f) {
    j.at("num").get_to(f.num);
    j.at("den").get_to(f.den);
}

void to_json(json& j, const PermutedDiagonal& d) { j = json{{"P", d.P}, {"D", d.D}, {"Q", d.Q}}; }
void from_json(const json& j, PermutedDiagonal& d) {
    j.at("P").get_to(d.P);
    j.at("D").get_to(d.D);
    j.at("Q").get_to(d.Q);
}

void to_json(json& j, const BruhatDocument& b) { j = json{{"V", b.V}, {"SD", b.SD}, {"U", b.U}}; }
void from_json(const json& j, BruhatDocument& b) {
    j.at("V").get_to(b.V);
    j.at("SD").get_to(b.SD);
    j.at("U").get_to(b.U);
}

std::string emit_json(const FactorsDocument& doc) {
    json j{{"domain", doc.domain}, {"rank", doc.rank}, {"alphas", doc.alphas}, {"P", doc.P},
           {"Q", doc.Q},           {"L", doc.L},       {"U", doc.U},           {"D", doc.D}};
    if (doc.M) j["M"] = *doc.M;
    if (doc.W) j["W"] = *doc.W;
    if (doc.bruhat) j["bruhat"] = *doc.bruhat;
    j["verified"] = doc.verified;
    return j.dump(2) + "\n";
}

FactorsDocument parse_json(std::string_view text) {
    try {
        auto j = json::parse(text);
        FactorsDocument doc;
        j.at("domain").get_to(doc.domain);
        j.at("rank").get_to(doc.rank);
        j.at("alphas").get_to(doc.alphas);
        j.at("P").get_to(doc.P);
        j.at("Q").get_to(doc.Q);
        j.at("L").get_to(doc.L);
        j.at("U").get_to(doc.U);
        j.at("D").get_to(doc.D);
        if (j.contains("M")) doc.M = j["M"].get<StringMatrix>();
        if (j.contains("W")) doc.W = j["W"].get<StringMatrix>();
        if (j.contains("bruhat")) doc.bruhat = j["bruhat"].get<BruhatDocument>();
        j.at("verified").get_to(doc.verified);
        return doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("factors document: ") + e.what());
    }
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (i < text.size()) {
        if (space(text[i])) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
            continue;
        }
        Token t{{}, line, col};
        while (i < text.size() && !space(text[i])) {
            t.text += text[i++];
            ++col;
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::string layout_product(const std::vector<std::pair<std::string, StringMatrix>>& blocks) {
    std::size_t height = 0;
    for (const auto& [name, m] : blocks) height = std::max(height, m.size());
    // each block rendered as bracketed, right-aligned columns
    std::vector<std::vector<std::string>> rendered;
    for (const auto& [name, m] : blocks) {
        std::size_t cols = m.empty() ? 0 : m[0].size();
        std::vector<std::size_t> w(cols, 1);
        for (const auto& row : m)
            for (std::size_t j = 0; j < cols; ++j) w[j] = std::max(w[j], row[j].size());
        std::vector<std::string> lines;
        for (const auto& row : m) {
            std::string s = "[";
            for (std::size_t j = 0; j < cols; ++j) {
                if (j) s += ' ';
                s += std::string(w[j] - row[j].size(), ' ') + row[j];
            }
            lines.push_back(s + "]");
        }
        std::size_t width = lines.empty() ? 2 : lines[0].size();
        width = std::max(width, name.size());
        std::string head = name + std::string(width - name.size(), ' ');
        for (auto& l : lines) l += std::string(width - l.size(), ' ');
        while (lines.size() < height) lines.push_back(std::string(width, ' '));
        lines.insert(lines.begin(), head);
        rendered.push_back(std::move(lines));
    }
    std::string out;
    const std::size_t mid = 1 + (height ? (height - 1) / 2 : 0);
    for (std::size_t r = 0; r <= height; ++r) {
        std::string line;
        for (std::size_t b = 0; b < rendered.size(); ++b) {
            if (b) line += (r == mid ? " · " : "   ");
            line += rendered[b][r];
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    }
    return out;
}

}  // namespace fftd
