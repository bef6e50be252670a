#pragma once

#include "taut/json_io.hpp"
#include "taut/selftest.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace taut::cli {

using report_t = nlohmann::ordered_json;

enum ExitCode : int { Ok = 0, CheckFailed = 1, BadInput = 2 };

struct Options {
    std::string input;
    std::string preset;
    std::string coefficients = "Z";
    std::optional<int> degree;
    std::string format = "text";
    std::optional<std::size_t> kmax;
    bool reduced = false;
    std::string theory = "Steenrod";
    std::uint64_t seed = 1;
    std::size_t count = 50;
};

namespace detail {

inline std::string matrix_text(const IntMatrix& m)
{
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += "; ";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + to_string(m(i, j));
    }
    return s + "]";
}

inline std::string scalar_text(const report_t& v)
{
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

/// "key: value" lines in insertion order; nested objects are indented.
inline void render_text(const report_t& r, std::ostream& out, int indent = 0)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [key, value] : r.items()) {
        if (value.is_object()) {
            out << pad << key << ":\n";
            render_text(value, out, indent + 2);
        } else if (value.is_array()) {
            bool flat = true;
            for (const auto& x : value) flat = flat && !x.is_object() && !x.is_array();
            if (flat) {
                out << pad << key << ":";
                std::string sep = " ";
                for (const auto& x : value) {
                    out << sep << scalar_text(x);
                    sep = ", ";
                }
                out << "\n";
            } else {
                out << pad << key << ":\n";
                for (const auto& x : value) {
                    if (x.is_object()) {
                        out << pad << "  -\n";
                        render_text(x, out, indent + 4);
                    } else {
                        out << pad << "  - " << x.dump() << "\n";
                    }
                }
            }
        } else {
            out << pad << key << ": " << scalar_text(value) << "\n";
        }
    }
}

inline std::size_t kmax_of(const Options& o) { return o.kmax ? *o.kmax : default_kmax(); }

inline io::json load_input(const Options& o)
{
    if (o.input.empty()) throw InputError("--input is required");
    return io::read_file(o.input);
}

inline report_t sequence_json(const SequenceReport& s)
{
    report_t r;
    r["title"] = s.title;
    std::string diagram;
    for (const auto& t : s.terms) diagram += (diagram.empty() ? "" : " -> ") + t.value.describe();
    r["diagram"] = "... -> " + diagram + " -> ...";
    report_t terms = report_t::object();
    for (const auto& t : s.terms) terms[t.label] = t.value.describe();
    r["terms"] = std::move(terms);
    report_t junctions = report_t::array();
    for (const auto& j : s.junctions) junctions.push_back({{"at", j.at}, {"verdict", to_string(j.verdict)}, {"reason", j.reason}});
    r["junctions"] = std::move(junctions);
    if (!s.outer.empty()) {
        report_t outer = report_t::array();
        for (const auto& j : s.outer) outer.push_back({{"at", j.at}, {"verdict", to_string(j.verdict)}, {"reason", j.reason}});
        r["outer junctions"] = std::move(outer);
    }
    if (!s.candidates.empty()) {
        report_t c = report_t::array();
        for (const auto& g : s.candidates) c.push_back(g.str());
        r["middle candidates"] = std::move(c);
    }
    if (s.i_n) {
        r["i_n"] = {{"matrix", matrix_text(s.i_n->map.matrix())},
                    {"kernel", s.i_n->kernel.str()},
                    {"cokernel", s.i_n->cokernel.str()}};
    }
    r["verdict"] = to_string(s.verdict);
    return r;
}

inline FiniteModel load_model(const Options& o, io::json& raw)
{
    if (!o.preset.empty()) return presets::by_name(o.preset);
    raw = load_input(o);
    return io::guarded([&] { return io::to_model(raw); });
}

inline NeighborhoodTower load_neighborhoods(const Options& o)
{
    if (!o.preset.empty()) return presets::neighborhood_by_name(o.preset);
    const io::json raw = load_input(o);
    return io::guarded([&] { return io::to_neighborhood_tower(raw); });
}

inline std::vector<int> degrees(const Options& o, int lo, int hi)
{
    if (o.degree) {
        if (*o.degree < lo || *o.degree > hi)
            throw DegreeOutOfRange("degree " + std::to_string(*o.degree) + " outside [" + std::to_string(lo) + ", " +
                                   std::to_string(hi) + "]");
        return {*o.degree};
    }
    std::vector<int> out;
    for (int d = lo; d <= hi; ++d) out.push_back(d);
    return out;
}

inline int exit_for(Verdict v) { return passed(v) ? Ok : CheckFailed; }

} // namespace detail

inline int cmd_snf(const Options& o, report_t& r)
{
    const io::json raw = detail::load_input(o);
    const IntMatrix m = io::guarded([&] { return io::to_matrix(raw.is_object() && raw.contains("matrix") ? raw.at("matrix") : raw); });
    const SmithForm s = smith_normal_form(m);
    report_t inv = report_t::array();
    for (const auto& d : s.invariants()) inv.push_back(to_string(d));
    r["rank"] = s.rank;
    r["invariants"] = std::move(inv);
    r["D"] = detail::matrix_text(s.d);
    r["U"] = detail::matrix_text(s.u);
    r["V"] = detail::matrix_text(s.v);
    const bool ok = s.u * m * s.v == s.d;
    r["check"] = ok ? "U*M*V = D verified" : "U*M*V != D";
    return ok ? Ok : CheckFailed;
}

inline int cmd_group(const Options& o, report_t& r)
{
    PresentedGroup g;
    if (!o.input.empty()) {
        const io::json raw = detail::load_input(o);
        g = io::guarded([&] { return raw.is_array() ? normalize(io::to_matrix(raw)) : io::to_group(raw); });
    } else {
        g = io::parse_coefficients(o.coefficients);
    }
    r["group"] = g.str();
    r["free_rank"] = g.free_rank();
    report_t t = report_t::array();
    for (const auto& d : g.torsion()) t.push_back(to_string(d));
    r["torsion"] = std::move(t);
    return Ok;
}

inline int cmd_homology(const Options& o, report_t& r, bool with_coefficients)
{
    const io::json raw = detail::load_input(o);
    const FreeComplex c = io::guarded([&] { return io::to_complex(raw); });
    const char* mark = c.direction() == Direction::Chain ? "H_" : "H^";
    if (with_coefficients) {
        const PresentedGroup g = io::parse_coefficients(o.coefficients);
        const CoefficientComplex h = dualize(c, g);
        const char* dual = h.direction() == Direction::Chain ? "H_" : "H^";
        r["coefficients"] = g.str();
        r["complex"] = std::string("Hom(C, ") + g.str() + ")";
        for (int d : detail::degrees(o, c.lo(), c.hi())) r[dual + std::to_string(d)] = h.homology(d).str();
    } else {
        for (int d : detail::degrees(o, c.lo(), c.hi())) r[mark + std::to_string(d)] = homology(c, d).str();
    }
    return Ok;
}

inline int cmd_uct(const Options& o, report_t& r)
{
    const io::json raw = detail::load_input(o);
    const FreeComplex c = io::guarded([&] { return io::to_complex(raw); });
    const PresentedGroup g = io::parse_coefficients(o.coefficients);
    r["coefficients"] = g.str();
    r["sign-convention"] = sign_convention;
    report_t list = report_t::array();
    for (int n : detail::degrees(o, c.lo(), c.hi())) {
        const UctCertificate u = uct_certificate(c, g, n);
        report_t e;
        e["degree"] = n;
        e["H^n"] = u.cohomology.str();
        e["H^n+1"] = u.next_cohomology.str();
        e["Ext-term"] = u.ext_term.str();
        e["Hom-term"] = u.hom_term.str();
        e["H_n(Hom(C,G))"] = u.middle.str();
        e["sequence"] = "0 -> " + u.ext_term.str() + " -> " + u.middle.str() + " -> " + u.hom_term.str() + " -> 0";
        e["verdict"] = "verified (injection, exactness, surjection, splitting)";
        list.push_back(std::move(e));
    }
    if (list.size() == 1) {
        for (const auto& [k, v] : list[0].items()) r[k] = v;
    } else {
        r["degrees"] = std::move(list);
    }
    return Ok;
}

inline int cmd_lim(const Options& o, report_t& r)
{
    const io::json raw = detail::load_input(o);
    const Tower t = io::guarded([&] { return io::to_tower(raw); });
    const LimOutcome l = lim(t, detail::kmax_of(o));
    const LimOutcome l1 = lim1(t, detail::kmax_of(o));
    r["lim"] = l.describe();
    r["lim-certificate"] = l.certificate;
    r["lim1"] = l1.describe();
    r["lim1-certificate"] = l1.certificate;
    r["lim2"] = lim_i(t, 2).describe();
    r["note"] = "towers are linear; a countable directed system is cofinally a chain";
    return Ok;
}

inline int cmd_colim(const Options& o, report_t& r)
{
    const io::json raw = detail::load_input(o);
    const Telescope t = io::guarded([&] { return io::to_telescope(raw); });
    const ColimOutcome c = colim(t, detail::kmax_of(o));
    r["colim"] = c.describe();
    r["exact"] = c.exact;
    r["certificate"] = c.certificate;
    return Ok;
}

inline int cmd_sixterm(const Options& o, report_t& r)
{
    const io::json raw = detail::load_input(o);
    const Telescope t = io::guarded([&] { return io::to_telescope(raw); });
    const PresentedGroup g = io::parse_coefficients(o.coefficients);
    const SixTermReport s = six_term_check(t, g, detail::kmax_of(o));
    r["coefficients"] = g.str();
    r["colim"] = s.colimit.describe();
    r["lim1 Hom"] = s.lim1_hom.describe();
    r["Ext(colim, G)"] = s.ext_colim.describe();
    r["lim Ext"] = s.lim_ext.describe();
    r["lim2 Hom"] = s.lim2_hom.describe();
    r["diagram"] = "0 -> " + s.lim1_hom.describe() + " -> " + s.ext_colim.describe() + " -> " + s.lim_ext.describe() +
                   " -> " + s.lim2_hom.describe() + " -> 0";
    r["note"] = s.note;
    r["verdict"] = to_string(s.verdict);
    return detail::exit_for(s.verdict);
}

inline int cmd_kolmogoroff(const Options& o, report_t& r)
{
    io::json raw;
    const FiniteModel m = detail::load_model(o, raw);
    const PresentedGroup g = io::parse_coefficients(o.coefficients);
    Partition p = Partition::singletons(m.atom_count());
    std::vector<Partition> chain;
    io::guarded([&] {
        if (raw.is_object() && raw.contains("partition")) p = Partition(io::to_blocks(raw.at("partition")), m.atom_count());
        if (raw.is_object() && raw.contains("partitions"))
            for (const auto& q : raw.at("partitions")) chain.emplace_back(io::to_blocks(q), m.atom_count());
        return 0;
    });
    if (chain.empty()) chain = {Partition::whole(m.atom_count()), p};
    const NerveComplex n(m, p);
    r["coefficients"] = g.str();
    r["blocks"] = p.block_count();
    bool agree = true;
    report_t degs = report_t::object();
    for (int d : detail::degrees(o, 0, n.dimension())) {
        const PresentedGroup k = kolmogoroff_homology(m, p, g, d);
        const PresentedGroup h = nerve_dual_homology(m, p, g, d);
        degs["H_" + std::to_string(d)] = {{"kolmogoroff", k.str()}, {"nerve", h.str()}, {"agree", k == h}};
        agree = agree && k == h;
    }
    r["homology"] = std::move(degs);
    const KolmogoroffUctReport u = kolmogoroff_uct_check(m, chain, g);
    report_t uct = report_t::object();
    for (std::size_t d = 0; d < u.certificates.size(); ++d) {
        const auto& c = u.certificates[d];
        uct["degree " + std::to_string(d)] = {{"Ext-term", c.ext_term.str()}, {"Hom-term", c.hom_term.str()},
                                              {"middle", c.middle.str()}, {"kolmogoroff", u.homology[d].str()}};
    }
    r["uct along refinements"] = std::move(uct);
    agree = agree && u.agree;
    r["verdict"] = agree ? "verified" : "failed";
    return agree ? Ok : CheckFailed;
}

inline int cmd_nerve(const Options& o, report_t& r)
{
    io::json raw;
    const FiniteModel m = detail::load_model(o, raw);
    Partition p = Partition::singletons(m.atom_count());
    if (raw.is_object() && raw.contains("partition"))
        p = io::guarded([&] { return Partition(io::to_blocks(raw.at("partition")), m.atom_count()); });
    const NerveComplex n(m, p);
    report_t simplices = report_t::object();
    report_t f = report_t::array();
    for (int d = 0; d <= n.dimension(); ++d) {
        report_t list = report_t::array();
        for (const auto& s : n.simplices(d)) {
            std::string t;
            for (std::size_t v : s) t += (t.empty() ? "" : " ") + std::to_string(v);
            list.push_back("{" + t + "}");
        }
        simplices["dim " + std::to_string(d)] = std::move(list);
        f.push_back(n.count(d));
    }
    r["blocks"] = p.block_count();
    r["f-vector"] = std::move(f);
    r["simplices"] = std::move(simplices);
    const FreeComplex c = n.chain_complex();
    report_t h = report_t::object();
    for (int d = 0; d <= n.dimension(); ++d) h["H_" + std::to_string(d)] = homology(c, d).str();
    r["homology"] = std::move(h);
    return Ok;
}

inline int cmd_tautness(const Options& o, report_t& r)
{
    const NeighborhoodTower t = detail::load_neighborhoods(o);
    const PresentedGroup g = io::parse_coefficients(o.coefficients);
    const int n = o.degree.value_or(0);
    if (n < 0) throw DegreeOutOfRange("degree must be nonnegative");
    const SequenceReport a = theorem2_sequence(t, n, g, o.reduced, detail::kmax_of(o));
    const SequenceReport b = eq14_sequence(t, n, g, o.reduced, detail::kmax_of(o));
    r["system"] = t.name;
    r["coefficients"] = g.str();
    r["H_n(A)"] = a.middle.describe();
    r["tautness sequence"] = detail::sequence_json(a);
    r["cohomological sequence"] = detail::sequence_json(b);
    const bool agree = a.middle.kind == b.middle.kind && a.middle.describe() == b.middle.describe() && a.verdict == b.verdict;
    r["sequences agree"] = agree;
    const Verdict v = agree ? a.verdict : Verdict::Failed;
    r["verdict"] = to_string(v);
    return detail::exit_for(v);
}

inline int cmd_milnor(const Options& o, report_t& r)
{
    const NeighborhoodTower t = detail::load_neighborhoods(o);
    const int n = o.degree.value_or(0);
    if (n < 0) throw DegreeOutOfRange("degree must be nonnegative");
    const Theory theory = parse_theory(o.theory);
    const SequenceReport s = milnor_sequence(t, n, theory, o.reduced, detail::kmax_of(o));
    r["system"] = t.name;
    r["theory"] = to_string(theory);
    r["degree"] = n;
    r["reduced"] = o.reduced;
    r["lim1"] = s.terms[0].value.describe();
    r["H_n(A)"] = s.middle.describe();
    r["lim"] = s.terms[2].value.describe();
    r["sequence"] = detail::sequence_json(s);
    r["verdict"] = to_string(s.verdict);
    return detail::exit_for(s.verdict);
}

inline int cmd_selftest(const Options& o, report_t& r)
{
    const auto results = selftest(o.seed, o.count);
    bool ok = true;
    r["seed"] = o.seed;
    for (const auto& s : results) {
        std::string line = std::to_string(s.cases - s.failures) + "/" + std::to_string(s.cases) + " passed";
        if (s.failures) line += "; first failure: " + s.first_failure;
        r[s.name] = line;
        ok = ok && s.failures == 0;
    }
    r["verdict"] = ok ? "verified" : "failed";
    return ok ? Ok : CheckFailed;
}

/// Parses the command line, runs one verb and writes its report. Returns the
/// process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact homology, derived limits and tautness checks"};
    app.require_subcommand(1);
    Options o;
    int degree = 0;
    std::size_t kmax = 0;

    struct Verb {
        const char* name;
        const char* help;
        int (*run)(const Options&, report_t&);
    };
    const std::vector<Verb> verbs{
        {"snf", "Smith normal form of an integer matrix", cmd_snf},
        {"group", "canonical form of a finitely generated abelian group", cmd_group},
        {"homology", "homology of a free (co)chain complex",
         [](const Options& opt, report_t& rep) { return cmd_homology(opt, rep, false); }},
        {"uct", "universal coefficient certificate for Hom(C, G)", cmd_uct},
        {"lim", "inverse limit and lim^1 of a tower", cmd_lim},
        {"colim", "direct limit of a telescope", cmd_colim},
        {"sixterm", "Ext of a direct limit via the derived-limit sequence", cmd_sixterm},
        {"kolmogoroff", "Kolmogoroff homology of a finite model against its nerve", cmd_kolmogoroff},
        {"nerve", "nerve of a partition of a finite model", cmd_nerve},
        {"tautness", "tautness sequences of a neighborhood system", cmd_tautness},
        {"milnor", "short exact sequence of a neighborhood system", cmd_milnor},
        {"selftest", "rerun the bundled randomized invariant checks", cmd_selftest},
    };
    std::vector<std::pair<CLI::App*, const Verb*>> subs;
    CLI::App* homology_cmd = nullptr;
    bool homology_coefficients = false;
    for (const auto& v : verbs) {
        CLI::App* s = app.add_subcommand(v.name, v.help);
        s->add_option("--input,-i", o.input, "input JSON file");
        s->add_option("--preset,-p", o.preset, "built-in model or neighborhood system");
        auto* coeff = s->add_option("--coefficients,-c", o.coefficients, "coefficient group, e.g. Z+Z/4");
        s->add_option("--degree,-d", degree, "degree");
        s->add_option("--format,-f", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
        s->add_option("--kmax", kmax, "stabilization bound for image and kernel chains")->check(CLI::PositiveNumber);
        s->add_flag("--reduced", o.reduced, "use reduced homology in degree 0");
        s->add_option("--theory", o.theory, "label: Massey, Kolmogoroff, Milnor or Steenrod");
        s->add_option("--seed", o.seed, "random seed for selftest");
        s->add_option("--count", o.count, "cases per selftest suite")->check(CLI::PositiveNumber);
        if (std::string(v.name) == "homology") {
            homology_cmd = s;
            coeff->each([&](const std::string&) { homology_coefficients = true; });
        }
        subs.emplace_back(s, &v);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return Ok;
        }
        err << "error: " << e.what() << "\n";
        return BadInput;
    }

    for (const auto& [s, v] : subs) {
        if (!s->parsed()) continue;
        if (s->count("--degree")) o.degree = degree;
        if (s->count("--kmax")) o.kmax = kmax;
        report_t r;
        r["command"] = v->name;
        int code = Ok;
        try {
            if (s == homology_cmd) code = cmd_homology(o, r, homology_coefficients);
            else code = v->run(o, r);
        } catch (const InputError& e) {
            err << "input error: " << e.what() << "\n";
            return BadInput;
        } catch (const CheckFailure& e) {
            err << "check failed: " << e.what() << "\n";
            r["verdict"] = "failed";
            r["failure"] = e.what();
            code = CheckFailed;
        } catch (const nlohmann::json::exception& e) {
            err << "input error: " << e.what() << "\n";
            return BadInput;
        }
        if (o.format == "json") out << r.dump(2) << "\n";
        else detail::render_text(r, out);
        return code;
    }
    return BadInput;
}

} // namespace taut::cli
