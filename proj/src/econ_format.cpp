#include "reallot/econ_format.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "reallot/errors.hpp"

namespace reallot {

namespace {

// Cursor over one line; columns are 1-based for diagnostics.
struct LineScanner {
    std::string_view text;
    int line = 0;
    size_t pos = 0;

    int column() const { return static_cast<int>(pos) + 1; }
    bool at_end() {
        skip_spaces();
        return pos >= text.size();
    }
    void skip_spaces() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    // A maximal run of non-space characters; empty at end of line.
    std::string_view word() {
        skip_spaces();
        const size_t start = pos;
        while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t') ++pos;
        return text.substr(start, pos - start);
    }
    [[noreturn]] void fail(int column, const std::string& what) const {
        throw ParseError(line, column, what);
    }
};

struct AgentLine {
    int line = 0;
    AgentId id = 0;
    Preference pref;
    Rational endow;
};

AgentLine parse_agent_line(LineScanner* sc) {
    AgentLine out;
    out.line = sc->line;

    int col = sc->column();
    const std::string_view keyword = sc->word();
    if (keyword != "agent")
        sc->fail(col, "expected 'agent', got '" + std::string(keyword) + "'");

    sc->skip_spaces();
    col = sc->column();
    const std::string_view id_text = sc->word();
    if (id_text.empty()) sc->fail(col, "expected an agent id");
    try {
        size_t used = 0;
        out.id = std::stoi(std::string(id_text), &used);
        if (used != id_text.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        sc->fail(col, "expected an integer agent id, got '" + std::string(id_text) + "'");
    }
    if (out.id < 1) sc->fail(col, "agent id must be positive");

    bool have_peak = false;
    bool have_endow = false;
    bool have_left = false;
    bool have_right = false;
    while (!sc->at_end()) {
        col = sc->column();
        const std::string_view field = sc->word();
        const size_t eq = field.find('=');
        if (eq == std::string_view::npos)
            sc->fail(col, "expected key=value, got '" + std::string(field) + "'");
        const std::string_view key = field.substr(0, eq);
        const std::string_view value = field.substr(eq + 1);
        const std::optional<Rational> parsed = Rational::parse(value);
        if (!parsed)
            sc->fail(col + static_cast<int>(eq) + 1,
                     "expected a rational value, got '" + std::string(value) + "'");
        auto take = [&](bool* seen, Rational* slot) {
            if (*seen) sc->fail(col, "duplicate field '" + std::string(key) + "'");
            *seen = true;
            *slot = *parsed;
        };
        if (key == "peak") take(&have_peak, &out.pref.peak);
        else if (key == "endow") take(&have_endow, &out.endow);
        else if (key == "left") take(&have_left, &out.pref.left_weight);
        else if (key == "right") take(&have_right, &out.pref.right_weight);
        else sc->fail(col, "unknown field '" + std::string(key) + "'; expected peak, endow, left, or right");

        if (key == "peak" && out.pref.peak < 0) sc->fail(col, "negative peak");
        if (key == "endow" && out.endow < 0) sc->fail(col, "negative endowment");
        if ((key == "left" && out.pref.left_weight <= 0) ||
            (key == "right" && out.pref.right_weight <= 0))
            sc->fail(col, "nonpositive weight");
    }
    if (!have_peak) sc->fail(sc->column(), "missing required field peak=");
    if (!have_endow) sc->fail(sc->column(), "missing required field endow=");
    return out;
}

}  // namespace

Economy parse_economy(std::string_view text) {
    std::vector<AgentLine> agents;
    int line_no = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);

        LineScanner sc{line, line_no};
        if (sc.at_end()) continue;
        AgentLine parsed = parse_agent_line(&sc);
        for (const AgentLine& prior : agents)
            if (prior.id == parsed.id)
                throw ParseError(parsed.line, 1,
                                 "duplicate agent id " + std::to_string(parsed.id) +
                                     " (first declared on line " + std::to_string(prior.line) +
                                     ")");
        agents.push_back(std::move(parsed));
        if (end == text.size()) break;
    }
    if (agents.empty()) throw ValidationError("no agents");

    std::vector<AgentId> ids;
    std::vector<Preference> prefs;
    std::vector<Rational> endows;
    ids.reserve(agents.size());
    prefs.reserve(agents.size());
    endows.reserve(agents.size());
    for (const AgentLine& a : agents) {
        ids.push_back(a.id);
        prefs.push_back(a.pref);
        endows.push_back(a.endow);
    }
    return Economy(std::move(ids), std::move(prefs), std::move(endows));
}

std::string serialize_economy(const Economy& e) {
    std::string out;
    for (int k = 0; k < e.size(); ++k) {
        const Preference& p = e.pref_at(k);
        out += "agent " + std::to_string(e.id_at(k)) + " peak=" + p.peak.str() +
               " endow=" + e.endowment_at(k).str();
        if (p.left_weight != 1) out += " left=" + p.left_weight.str();
        if (p.right_weight != 1) out += " right=" + p.right_weight.str();
        out += "\n";
    }
    return out;
}

}  // namespace reallot
