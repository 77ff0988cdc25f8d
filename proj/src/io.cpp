#include "ccl/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace ccl::io {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("error reading " + path.string());
    return buffer.str();
}

std::string_view to_string(Violation::Kind kind) {
    using K = Violation::Kind;
    switch (kind) {
    case K::cyclic_program: return "cyclic_program";
    case K::empty_alternative: return "empty_alternative";
    case K::non_ground_choice: return "non_ground_choice";
    case K::duplicate_choice: return "duplicate_choice";
    case K::missing_probability: return "missing_probability";
    case K::probability_range: return "probability_range";
    case K::mass_sum: return "mass_sum";
    case K::choice_heads_clause: return "choice_heads_clause";
    case K::shared_across_spaces: return "shared_across_spaces";
    }
    return "unknown";
}

namespace {

Json optional_rational(const std::optional<Rational>& value) {
    return value ? Json(to_fraction_string(*value)) : Json(nullptr);
}

std::string atom_list(const WorldSpace& ws, const std::vector<AtomId>& atoms) {
    std::string out = "{";
    for (std::size_t i = 0; i < atoms.size(); ++i) out += (i ? ", " : "") + ws.atom_name(atoms[i]);
    return out + "}";
}

std::vector<AtomId> true_atoms(const Interpretation& model) {
    std::vector<AtomId> out;
    for (AtomId a = 0; a < model.truth.size(); ++a)
        if (model.truth[a]) out.push_back(a);
    return out;
}

Json verdict_json(const std::optional<ranking::Verdict>& v) {
    return v ? Json(std::string(ranking::to_string(*v))) : Json(nullptr);
}

} // namespace

Json to_json(const IntervalResult& interval) {
    Json j;
    j["lower"] = to_fraction_string(interval.lower);
    j["upper"] = to_fraction_string(interval.upper);
    j["lower_dec"] = to_double(interval.lower);
    j["upper_dec"] = to_double(interval.upper);
    j["method"] = std::string(to_string(interval.method));
    j["epsilon"] = to_fraction_string(interval.epsilon);
    return j;
}

Json to_json(const ValidationReport& report) {
    Json j;
    j["valid"] = report.ok();
    j["violations"] = Json::array();
    for (const Violation& v : report.violations)
        j["violations"].push_back({{"kind", std::string(to_string(v.kind))}, {"message", v.message}});
    return j;
}

Json to_json(const BisectionResult& result) {
    Json j = to_json(result.interval);
    j["psat_calls"] = result.psat_calls();
    j["sat_low"] = to_fraction_string(result.bracket.sat_low);
    j["sat_high"] = to_fraction_string(result.bracket.sat_high);
    j["unsat_low"] = optional_rational(result.bracket.unsat_low);
    j["unsat_high"] = optional_rational(result.bracket.unsat_high);
    return j;
}

Json to_json(const WorldSpace& ws) {
    auto names = [&](const std::vector<AtomId>& atoms) {
        Json out = Json::array();
        for (AtomId a : atoms) out.push_back(ws.atom_name(a));
        return out;
    };
    Json j;
    j["worlds"] = Json::array();
    for (std::size_t w = 0; w < ws.worlds().size(); ++w) {
        const World& world = ws.worlds()[w];
        j["worlds"].push_back({{"index", w + 1},
                               {"choice", names(world.image)},
                               {"true_atoms", names(true_atoms(world.model))},
                               {"classes", world.classes}});
    }
    j["spaces"] = Json::array();
    for (const auto& classes : ws.classes_by_space()) {
        Json space = Json::array();
        for (const WorldClass& c : classes) {
            Json members = Json::array();
            for (std::size_t w : c.worlds) members.push_back(w + 1);
            space.push_back({{"image", names(c.partial.image)}, {"worlds", members}});
        }
        j["spaces"].push_back({{"classes", space}});
    }
    return j;
}

Json to_json(const ranking::EvaluationReport& report) {
    const auto& names = report.counts.names;
    Json j;
    j["objects"] = names;
    j["counts"] = report.counts.counts;
    j["N"] = report.counts.total;
    j["pairs"] = Json::array();
    for (const ranking::PairReport& p : report.pairs) {
        j["pairs"].push_back({{"pair", {names[p.first], names[p.second]}},
                              {"interval", to_json(p.interval)},
                              {"ccl_verdict", std::string(ranking::to_string(p.ccl_verdict))},
                              {"icl_value", to_fraction_string(p.icl_value)},
                              {"icl_value_dec", to_double(p.icl_value)},
                              {"icl_verdict", std::string(ranking::to_string(p.icl_verdict))},
                              {"truth", verdict_json(p.truth)}});
    }
    j["determinacy_rate"] = to_fraction_string(report.determinacy_rate);
    j["icl_acc_determinate"] = optional_rational(report.icl_acc_determinate);
    j["icl_acc_indeterminate"] = optional_rational(report.icl_acc_indeterminate);
    return j;
}

std::string render_table(const IntervalResult& interval) {
    std::ostringstream out;
    out << "method  " << to_string(interval.method) << "\n"
        << "lower   " << to_fraction_string(interval.lower) << "  (" << to_double(interval.lower) << ")\n"
        << "upper   " << to_fraction_string(interval.upper) << "  (" << to_double(interval.upper) << ")\n";
    if (interval.epsilon != 0) out << "epsilon " << to_fraction_string(interval.epsilon) << "\n";
    return out.str();
}

std::string render_table(const ValidationReport& report) {
    if (report.ok()) return "valid\n";
    std::string out;
    for (const Violation& v : report.violations) out += std::string(to_string(v.kind)) + ": " + v.message + "\n";
    return out;
}

std::string render_table(const WorldSpace& ws) {
    std::ostringstream out;
    for (std::size_t w = 0; w < ws.worlds().size(); ++w) {
        const World& world = ws.worlds()[w];
        out << "w" << (w + 1) << "  choice " << atom_list(ws, world.image) << "  true "
            << atom_list(ws, true_atoms(world.model)) << "\n";
    }
    for (std::size_t s = 0; s < ws.num_spaces(); ++s) {
        out << "space " << (s + 1) << "\n";
        for (const WorldClass& c : ws.classes_by_space()[s]) {
            out << "  " << atom_list(ws, c.partial.image) << " :";
            for (std::size_t w : c.worlds) out << " w" << (w + 1);
            out << "\n";
        }
    }
    return out.str();
}

std::string render_table(const ranking::EvaluationReport& report) {
    const auto& names = report.counts.names;
    std::ostringstream out;
    out << "counts (rank x object), N=" << report.counts.total << "\n";
    for (const auto& row : report.counts.counts) {
        out << " ";
        for (auto c : row) out << " " << std::setw(4) << c;
        out << "\n";
    }
    for (const ranking::PairReport& p : report.pairs) {
        out << names[p.first] << " vs " << names[p.second] << "  [" << to_double(p.interval.lower) << ", "
            << to_double(p.interval.upper) << "]  ccl " << ranking::to_string(p.ccl_verdict) << "  icl "
            << to_double(p.icl_value) << " " << ranking::to_string(p.icl_verdict) << "  truth "
            << (p.truth ? ranking::to_string(*p.truth) : "n/a") << "\n";
    }
    auto opt = [](const std::optional<Rational>& v) { return v ? std::to_string(to_double(*v)) : std::string("n/a"); };
    out << "determinacy rate " << to_double(report.determinacy_rate) << "\n"
        << "icl accuracy (determinate) " << opt(report.icl_acc_determinate) << "\n"
        << "icl accuracy (indeterminate) " << opt(report.icl_acc_indeterminate) << "\n";
    return out.str();
}

} // namespace ccl::io
