#include "qsing/correlator.hpp"
#include "qsing/error.hpp"
#include "qsing/milnor.hpp"
#include "qsing/mirror.hpp"
#include "qsing/saito.hpp"
#include "qsing/singular.hpp"
#include "qsing/statespace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace qsing;
using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string command;
    std::string poly;
    std::string vars;
    std::string group = "J";
    std::string case_tag;
    int order = 4;
    int genus = 0;
    int points = 3;
    bool as_json = false;
};

// Usage problems detected after parsing; reported with exit status 2.
struct UsageError {
    std::string flag;
    std::string message;
};

json rat(const Rational& r) { return to_string(r); }

json rat_list(const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& r : v)
        out.push_back(rat(r));
    return out;
}

json rat_matrix(const Matrix& m) {
    json out = json::array();
    for (const auto& row : m)
        out.push_back(rat_list(row));
    return out;
}

json elem(const GroupElement& g) { return rat_list(g); }

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::optional<std::vector<std::string>> var_list(const RunConfig& cfg) {
    if (cfg.vars.empty())
        return std::nullopt;
    return split(cfg.vars, ',');
}

QSingularity load_singularity(const RunConfig& cfg) {
    if (cfg.poly.empty())
        throw UsageError{"--poly", "this command needs --poly"};
    return singularity_from_text(cfg.poly, var_list(cfg));
}

// "J", "max", or generators "t1,t2;t1,t2" given as phases.
SymmetryGroup load_group(const QSingularity& s, const std::string& selector) {
    SymmetryGroup GW = max_diagonal_group(s);
    if (selector == "max")
        return GW;
    if (selector == "J")
        return subgroup_from_generators(s, GW, {exponential_grading_element(s)});
    std::vector<GroupElement> gens;
    for (const auto& g : split(selector, ';')) {
        std::vector<std::string> parts = split(g, ',');
        if (parts.size() != s.nvars())
            throw UsageError{"--group", "generator '" + g + "' needs " + std::to_string(s.nvars()) + " phases"};
        GroupElement e;
        for (const auto& p : parts) {
            try {
                e.push_back(parse_rational(p));
            } catch (const Error&) {
                throw UsageError{"--group", "bad phase '" + p + "'"};
            }
        }
        gens.push_back(group_add(group_identity(s.nvars()), e));
    }
    if (gens.empty())
        throw UsageError{"--group", "empty group selector"};
    return subgroup_from_generators(s, GW, gens);
}

json analyze(const RunConfig& cfg) {
    QSingularity s = load_singularity(cfg);
    json out;
    out["poly"] = render(s.W, s.vars);
    out["vars"] = s.vars;
    out["weights"] = rat_list(s.q);
    out["c_hat"] = rat(s.c_hat);
    out["mu"] = s.mu;
    out["group_order"] = max_diagonal_group(s).order();
    out["J"] = elem(exponential_grading_element(s));
    MilnorRing r = milnor_basis(s);
    json basis = json::array();
    for (const auto& m : r.basis)
        basis.push_back(render_monomial(m, s.vars));
    out["milnor_basis"] = basis;
    out["hessian_class"] = render(hessian_class(r), s.vars);
    return out;
}

json group_report(const RunConfig& cfg) {
    QSingularity s = load_singularity(cfg);
    SymmetryGroup G = load_group(s, cfg.group);
    json out;
    out["order"] = G.order();
    out["contains_J"] = G.contains_J;
    json gens = json::array();
    for (const auto& g : G.generators)
        gens.push_back(elem(g));
    out["generators"] = gens;
    json elems = json::array();
    for (const auto& g : G.elements)
        elems.push_back(elem(g));
    out["elements"] = elems;
    return out;
}

json statespace_report(const RunConfig& cfg) {
    QSingularity s = load_singularity(cfg);
    StateSpace H = build_state_space(s, load_group(s, cfg.group));
    json out;
    out["dim"] = H.dim();
    json sectors = json::array();
    for (const auto& sec : H.sectors) {
        if (sec.invariants.empty())
            continue;
        json j;
        j["gamma"] = elem(sec.gamma);
        j["N_gamma"] = sec.N_gamma;
        j["iota"] = rat(sec.iota);
        j["deg_W"] = rat(sec.deg_W);
        j["ramond"] = sec.is_ramond;
        sectors.push_back(j);
    }
    out["sectors"] = sectors;
    json basis = json::array();
    for (size_t i = 0; i < H.dim(); ++i)
        basis.push_back({{"label", H.basis[i].label}, {"deg_W", rat(H.degrees[i])}});
    out["basis"] = basis;
    out["unit"] = H.basis[H.unit].label;
    out["pairing"] = rat_matrix(H.eta);
    return out;
}

json correlator_list(const CorrelatorTable& table, const std::vector<std::string>& labels) {
    json out = json::array();
    for (const auto& [key, entry] : table.entries()) {
        if (sgn(entry.value) == 0)
            continue;
        json ins = json::array();
        for (size_t i : key.second)
            ins.push_back(labels[i]);
        out.push_back({{"insertions", ins}, {"value", rat(entry.value)}, {"provenance", entry.provenance}});
    }
    return out;
}

json correlators(const RunConfig& cfg) {
    if (cfg.points != 3 && cfg.points != 4)
        throw UsageError{"--points", "only 3 and 4 points are evaluated directly"};
    if (!cfg.case_tag.empty()) {
        // Family coordinates of a named mirror case.
        if (cfg.points != 4)
            throw UsageError{"--points", "--case lists four-point values"};
        CaseRun run = run_mirror_case(mirror_case(cfg.case_tag));
        if (run.transported.dim() == 0)
            fail(run.error_kind, run.error_message);
        json out;
        out["case"] = cfg.case_tag;
        out["coordinates"] = run.transported.labels;
        out["correlators"] = correlator_list(run.four.values, run.transported.labels);
        return out;
    }
    QSingularity s = load_singularity(cfg);
    StateSpace H = build_state_space(s, load_group(s, cfg.group));
    AModel model(H);
    std::vector<std::string> labels;
    for (const auto& b : H.basis)
        labels.push_back(b.label);
    json out;
    out["points"] = cfg.points;
    // Building the algebra evaluates every three-point correlator into the model's table.
    FrobeniusAlgebra alg = frobenius_algebra(model);
    if (cfg.points == 3) {
        out["correlators"] = correlator_list(model.table(), labels);
        return out;
    }
    FourPointSolution sol = solve_four_point(model, alg, identity_matrix(alg.dim()));
    out["correlators"] = correlator_list(sol.values, labels);
    json und = json::array();
    for (const auto& key : sol.undetermined) {
        json ins = json::array();
        for (size_t i : key)
            ins.push_back(labels[i]);
        und.push_back(ins);
    }
    out["undetermined"] = und;
    return out;
}

json potential(const RunConfig& cfg) {
    if (cfg.case_tag.empty())
        throw UsageError{"--case", "potential needs a named case (its coordinates come from the mirror map)"};
    if (cfg.order < 3)
        throw UsageError{"--order", "order must be at least 3"};
    MirrorCase spec = mirror_case(cfg.case_tag);
    CaseRun run = run_mirror_case(spec);
    if (run.transported.dim() == 0 || !spec.b_family)
        fail(run.error_kind.empty() ? "Unevaluable" : run.error_kind, run.error_message);
    FamilyData fd = family_data(*spec.b_family, spec.b_n);
    WdvvEngine engine(run.transported, MonomialPresentation{fd.basis}, run.four.values);
    PotentialSeries p = genus_zero_potential(engine, cfg.order, fd.labels);
    json out;
    out["case"] = cfg.case_tag;
    out["order"] = cfg.order;
    out["coordinates"] = p.coordinates;
    json parts;
    for (int k = 3; k <= cfg.order; ++k)
        parts["F" + std::to_string(k)] = render_potential(p.part(k));
    out["potential"] = parts;
    return out;
}

json bmodel(const RunConfig& cfg) {
    if (cfg.case_tag.empty())
        throw UsageError{"--case", "bmodel needs a family tag: A:n, D:n, E6, E7 or E8"};
    std::vector<std::string> parts = split(cfg.case_tag, ':');
    if (parts.empty())
        throw UsageError{"--case", "empty family tag"};
    Family f = parse_family(parts[0]);
    int n = 0;
    if (f == Family::A || f == Family::D) {
        if (parts.size() != 2)
            throw UsageError{"--case", "A and D families need an index"};
        try {
            n = std::stoi(parts[1]);
        } catch (const std::exception&) {
            throw UsageError{"--case", "bad index '" + parts[1] + "'"};
        }
    }
    if (cfg.order < 1)
        throw UsageError{"--order", "order must be positive"};
    BPotential p = bmodel_potential(f, n, 1);
    FlatCoordMap map = flat_coordinates(f, n, cfg.order);
    json out;
    out["family"] = cfg.case_tag;
    out["poly"] = render(map.data.W, map.data.vars);
    out["base_form"] = rat(map.data.base_form);
    out["coordinates"] = map.data.labels;
    json basis = json::array();
    for (const auto& m : map.data.basis)
        basis.push_back(render_monomial(m, map.data.vars));
    out["basis"] = basis;
    out["eta"] = rat_matrix(p.eta);
    out["F3"] = render_potential(p.F3);
    out["F4"] = render_potential(p.F4);
    out["quartic_complete"] = p.quartic_complete;
    std::vector<std::string> tnames;
    for (size_t i = 0; i < map.data.dim(); ++i)
        tnames.push_back("t" + std::to_string(i));
    json flat = json::object();
    for (size_t i = 0; i < map.data.dim(); ++i)
        flat[map.data.labels[i]] = render(map.s_of_t[i], tnames);
    out["flat_coordinates"] = flat;
    return out;
}

json mirror_check(const RunConfig& cfg) {
    if (cfg.case_tag.empty())
        throw UsageError{"--case", "mirror-check needs --case"};
    CaseRun run = run_mirror_case(mirror_case(cfg.case_tag));
    json out;
    out["case"] = cfg.case_tag;
    bool iso_ok = run.iso.P.size() > 0;
    out["ring_isomorphism"] = iso_ok;
    if (iso_ok)
        out["rho"] = rat(run.iso.rho);
    if (!run.printed_iso_error.empty())
        out["printed_images"] = run.printed_iso_error;
    if (run.basic_value)
        out["basic"] = rat(*run.basic_value);
    if (run.sector_basic_value)
        out["sector_basic"] = rat(*run.sector_basic_value);
    if (run.spec.expected_basic)
        out["expected_basic"] = rat(*run.spec.expected_basic);
    if (run.match)
        out["lambda"] = rat(run.match->lambda);
    if (run.spec.expected_lambda)
        out["expected_lambda"] = rat(*run.spec.expected_lambda);
    if (run.match && run.spec.expected_lambda)
        out["lambda_matches_expected"] = run.match->lambda == *run.spec.expected_lambda;
    out["verified"] = iso_ok && run.match.has_value() && run.match->verified;
    if (!run.error_kind.empty())
        out["error"] = {{"kind", run.error_kind}, {"message", run.error_message}};
    return out;
}

void print_text(const json& j, const std::string& indent = "") {
    for (const auto& [key, value] : j.items()) {
        if (value.is_string())
            std::cout << indent << key << ": " << value.get<std::string>() << "\n";
        else if (value.is_primitive())
            std::cout << indent << key << ": " << value.dump() << "\n";
        else if (value.is_object()) {
            std::cout << indent << key << ":\n";
            print_text(value, indent + "  ");
        } else {
            std::cout << indent << key << ":\n";
            for (const auto& item : value)
                std::cout << indent << "  " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    if (const char* env = std::getenv("QSING_ORDER")) {
        try {
            cfg.order = std::stoi(env);
        } catch (const std::exception&) {
            std::cerr << "QSING_ORDER: not an integer\n";
            return 2;
        }
    }

    CLI::App app{"Exact genus-zero invariants of quasi-homogeneous singularities"};
    app.require_subcommand(1);
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--poly", cfg.poly, "quasi-homogeneous polynomial, e.g. x^3+x*y^3");
        sub->add_option("--vars", cfg.vars, "comma-separated variable order");
        sub->add_option("--group", cfg.group, "J, max, or generators as phases 'a,b;c,d'");
        sub->add_option("--case", cfg.case_tag, "named case: A:n, D:n, D:n:J, DT:n, E6, E7, E8");
        sub->add_option("--order", cfg.order, "truncation order (default $QSING_ORDER or 4)");
        sub->add_option("--genus", cfg.genus, "genus (only 0 is supported)");
        sub->add_option("--points", cfg.points, "number of insertions (3 or 4)");
        sub->add_flag("--json", cfg.as_json, "machine-readable output");
    };
    for (const char* name : {"analyze", "group", "statespace", "correlators", "potential", "bmodel", "mirror-check"})
        add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        if (cfg.genus != 0)
            throw UsageError{"--genus", "only genus 0 is supported"};
        json out;
        if (cfg.command == "analyze")
            out = analyze(cfg);
        else if (cfg.command == "group")
            out = group_report(cfg);
        else if (cfg.command == "statespace")
            out = statespace_report(cfg);
        else if (cfg.command == "correlators")
            out = correlators(cfg);
        else if (cfg.command == "potential")
            out = potential(cfg);
        else if (cfg.command == "bmodel")
            out = bmodel(cfg);
        else
            out = mirror_check(cfg);
        if (cfg.as_json)
            std::cout << out.dump(2) << "\n";
        else
            print_text(out);
        return 0;
    } catch (const UsageError& e) {
        std::cerr << e.flag << ": " << e.message << "\n";
        return 2;
    } catch (const Error& e) {
        if (cfg.as_json)
            std::cout << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump(2) << "\n";
        else
            std::cerr << e.what() << "\n";
        return 1;
    }
}
