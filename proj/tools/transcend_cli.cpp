// Batch command-line driver: ingest a JSON function-spec file, run one
// pipeline, emit a report (JSON, or CSV for scan record tables).
//
// Exit codes: 0 success, 1 usage/parse failure, 2 mathematical failure,
// 3 precision/truncation exhaustion.  Every failure is also emitted as a JSON
// diagnostic on the error stream.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "transcend/auxform.hpp"
#include "transcend/ball.hpp"
#include "transcend/measure.hpp"
#include "transcend/numberfield.hpp"
#include "transcend/relations.hpp"
#include "transcend/specfile.hpp"
#include "transcend/systems.hpp"

using ojson = nlohmann::ordered_json;
using transcend::error;
using transcend::Rational;
using transcend::SpecFile;

namespace {

// ---------------------------------------------------------------------------
// report serialization
// ---------------------------------------------------------------------------

std::string rat_str(const Rational& q) { return q.get_str(); }

ojson element_json(const transcend::FieldElement& x) {
    if (x.is_rational_valued()) return rat_str(x.rational_value());
    ojson a = ojson::array();
    for (const auto& c : x.coords()) a.push_back(rat_str(c));
    return a;
}

ojson poly_json(const transcend::Poly<transcend::FieldElement>& p) {
    ojson a = ojson::array();
    for (const auto& c : p.coeffs()) a.push_back(element_json(c));
    return a;
}

ojson ball_json(const transcend::ComplexBall& b) {
    ojson o;
    o["re"] = b.re_string();
    o["im"] = b.im_string();
    o["radius"] = b.rad_string();
    o["abs_lb"] = rat_str(b.abs_lb());
    o["abs_ub"] = rat_str(b.abs_ub());
    return o;
}

ojson system_json(const transcend::LinearSystemSpec& sys) {
    ojson o;
    o["kind"] = sys.kind == transcend::SystemKind::differential ? "differential" : "mahler";
    if (sys.kind == transcend::SystemKind::mahler) o["q"] = sys.q;
    o["size"] = sys.size;
    o["T"] = poly_json(sys.T);
    ojson rows = ojson::array();
    for (size_t i = 0; i < sys.size; ++i)
        for (size_t j = 0; j < sys.size; ++j) {
            ojson e;
            e["num"] = poly_json(sys.N[i][j]);
            e["den"] = poly_json(sys.T);
            rows.push_back(e);
        }
    o["A"] = rows; // row-major numerator/denominator polynomial pairs
    return o;
}

ojson multipoly_json(const transcend::MultiPoly<transcend::FieldElement>& p) {
    ojson terms = ojson::array();
    for (const auto& [e, c] : p.terms()) {
        ojson t;
        t["exps"] = e;
        t["coeff"] = element_json(c);
        terms.push_back(t);
    }
    return terms;
}

ojson zpoly_multipoly_json(
    const transcend::MultiPoly<transcend::Poly<transcend::FieldElement>>& p) {
    ojson terms = ojson::array();
    for (const auto& [e, c] : p.terms()) {
        ojson t;
        t["exps"] = e;
        t["coeff"] = poly_json(c);
        terms.push_back(t);
    }
    return terms;
}

ojson form_json(const transcend::AuxiliaryForm& form) {
    ojson o;
    ojson cs = ojson::array();
    for (const auto& p : form.coeffs) cs.push_back(poly_json(p));
    o["coeffs"] = cs;
    o["z_degree"] = form.z_degree;
    o["generation"] = form.generation;
    return o;
}

const char* status_name(transcend::ValueStatus s) {
    switch (s) {
        case transcend::ValueStatus::nonzero: return "nonzero";
        case transcend::ValueStatus::undetermined_zero: return "undetermined-zero";
        default: return "certified-zero";
    }
}

ojson record_json(const transcend::ScanRecord& r) {
    ojson o;
    o["coeffs"] = r.coeffs;
    o["degree"] = r.degree;
    o["height"] = r.height;
    o["log2_abs"] = r.log2_abs;
    o["exponent"] = r.exponent;
    o["status"] = status_name(r.status);
    return o;
}

// ---------------------------------------------------------------------------
// command plumbing
// ---------------------------------------------------------------------------

struct Flags {
    std::string spec_path;
    long precision = 0; // 0 = spec default
    long order = 0;     // 0 = command default
    unsigned long long seed = 0;
    std::string strategy = "exhaustive";
    std::string out;
    std::string format = "json";
};

long resolved_precision(const SpecFile& spec, const Flags& fl) {
    long p = fl.precision > 0 ? fl.precision : spec.precision;
    if (p < 8) throw transcend::usage_error("bad-precision", "need at least 8 bits");
    return p;
}

ojson report_header(const std::string& command, const SpecFile& spec, const Flags& fl) {
    ojson o;
    o["schema"] = 1;
    o["command"] = command;
    o["spec"] = spec.path;
    o["precision"] = resolved_precision(spec, fl);
    o["order"] = fl.order;
    o["seed"] = fl.seed;
    o["strategy"] = fl.strategy;
    o["embedding"] = spec.embedding;
    o["declared_t"] = spec.declared_t;
    return o;
}

void write_text(const Flags& fl, const std::string& text) {
    if (fl.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(fl.out);
    if (!out) throw transcend::usage_error("bad-output", "cannot open " + fl.out);
    out << text;
}

void write_report(const Flags& fl, const ojson& report) {
    write_text(fl, report.dump(2) + "\n");
}

transcend::LinearSystemSpec spec_system(const SpecFile& spec) {
    std::vector<transcend::LinearSystemSpec> blocks;
    for (const auto& f : spec.functions) blocks.push_back(transcend::companion(f));
    return transcend::direct_sum(blocks);
}

transcend::ValueVector spec_values(const SpecFile& spec, long precision) {
    transcend::ValueVector vv = transcend::make_value_vector(
        spec.functions, spec.alpha, precision, transcend::TailMode::certified, spec.declared_t,
        spec.embedding);
    vv.value_relations = spec.value_relations;
    return vv;
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

void cmd_series(const SpecFile& spec, const Flags& fl) {
    size_t T = fl.order > 0 ? static_cast<size_t>(fl.order) : 16;
    ojson rep = report_header("series", spec, fl);
    rep["order"] = T;
    ojson fs = ojson::array();
    for (const auto& f : spec.functions) {
        transcend::TruncSeries s = transcend::extend_series(f, T);
        ojson e;
        e["name"] = f.name;
        ojson cs = ojson::array();
        for (size_t k = 0; k < s.order(); ++k) cs.push_back(element_json(s.coeff(k)));
        e["coefficients"] = cs;
        fs.push_back(e);
    }
    rep["functions"] = fs;
    write_report(fl, rep);
}

void cmd_system(const SpecFile& spec, const Flags& fl) {
    ojson rep = report_header("system", spec, fl);
    ojson blocks = ojson::array();
    for (const auto& f : spec.functions) blocks.push_back(system_json(transcend::companion(f)));
    rep["blocks"] = blocks;
    rep["direct_sum"] = system_json(spec_system(spec));
    write_report(fl, rep);
}

void cmd_regular(const SpecFile& spec, const Flags& fl) {
    transcend::RegularityReport rr =
        transcend::is_regular(spec_system(spec), spec.alpha, spec.embedding);
    ojson rep = report_header("regular", spec, fl);
    rep["alpha"] = element_json(spec.alpha);
    rep["regular"] = rr.regular;
    rep["witness_n"] = rr.witness_n;
    rep["cutoff_n"] = rr.cutoff_n;
    write_report(fl, rep);
}

std::vector<transcend::TruncSeries> pade_components(const SpecFile& spec, size_t order) {
    std::vector<transcend::TruncSeries> g;
    g.push_back(transcend::TruncSeries(
        std::vector<transcend::FieldElement>{transcend::FieldElement(Rational(1))}, order));
    for (const auto& f : spec.functions)
        g.push_back(transcend::extend_series(f, order));
    return g;
}

void cmd_pade(const SpecFile& spec, const Flags& fl, long n, long vstar) {
    size_t order = static_cast<size_t>(vstar) + 1;
    if (fl.order > 0 && static_cast<size_t>(fl.order) > order)
        order = static_cast<size_t>(fl.order);
    std::vector<transcend::TruncSeries> g = pade_components(spec, order);
    transcend::AuxiliaryForm form = transcend::build_auxiliary(g, n, vstar);
    auto val = transcend::series_valuation(transcend::eval_form(form, g));
    ojson rep = report_header("pade", spec, fl);
    rep["n"] = n;
    rep["vstar"] = vstar;
    rep["form"] = form_json(form);
    rep["valuation"] = val ? ojson(*val) : ojson(nullptr);
    rep["height"] = rat_str(transcend::form_height(form));
    write_report(fl, rep);
}

void cmd_iterate(const SpecFile& spec, const Flags& fl, long n, long vstar, long steps) {
    transcend::LinearSystemSpec sys = spec_system(spec);
    size_t order = fl.order > 0 ? static_cast<size_t>(fl.order) : 128;
    if (order < static_cast<size_t>(vstar) + 1) order = static_cast<size_t>(vstar) + 1;
    std::vector<transcend::TruncSeries> g;
    for (const auto& f : spec.functions) {
        auto v = transcend::solution_vector(f, order);
        g.insert(g.end(), v.begin(), v.end());
    }
    transcend::AuxiliaryForm form = transcend::build_auxiliary(g, n, vstar);
    ojson rep = report_header("iterate", spec, fl);
    rep["n"] = n;
    rep["vstar"] = vstar;
    rep["steps"] = steps;
    ojson trace = ojson::array();
    for (long k = 0; k <= steps; ++k) {
        ojson e;
        e["step"] = k;
        e["z_degree"] = form.z_degree;
        e["clearing_d"] = form.clearing_d;
        auto val = transcend::series_valuation(transcend::eval_form(form, g));
        e["valuation"] = val ? ojson(*val) : ojson(nullptr);
        e["height"] = rat_str(transcend::form_height(form));
        trace.push_back(e);
        if (k == steps) break;
        form = sys.kind == transcend::SystemKind::differential
                   ? transcend::theta_step(form, sys)
                   : transcend::mahler_step(form, sys);
    }
    rep["trace"] = trace;
    rep["form"] = form_json(form);
    write_report(fl, rep);
}

void cmd_relations(const SpecFile& spec, const Flags& fl, int D, long M) {
    size_t m = spec.functions.size();
    size_t monos = transcend::MonomialBasis(static_cast<int>(m), D).size();
    size_t T = fl.order > 0 ? static_cast<size_t>(fl.order)
                            : 2 * monos * static_cast<size_t>(M + 1) + 8;
    transcend::RelationBasis rb =
        transcend::relation_kernel(spec.functions, D, M, T, spec.margin);
    ojson rep = report_header("relations", spec, fl);
    rep["D"] = rb.D;
    rep["M"] = rb.M;
    rep["T"] = rb.T;
    rep["certified"] = rb.certified;
    ojson gens = ojson::array();
    for (const auto& gpoly : rb.generators) gens.push_back(zpoly_multipoly_json(gpoly));
    rep["generators"] = gens;
    std::vector<transcend::MultiPoly<transcend::FieldElement>> special =
        transcend::specialize(rb, spec.alpha);
    ojson specd = ojson::array();
    for (const auto& s : special) specd.push_back(multipoly_json(s));
    rep["specialized_at_alpha"] = specd;
    ojson gb = ojson::array();
    for (const auto& s : transcend::buchberger(special, transcend::MonomialOrder::grlex))
        gb.push_back(multipoly_json(s));
    rep["groebner"] = gb;
    write_report(fl, rep);
}

void cmd_ledger(const SpecFile& spec, const Flags& fl, long delta, long d) {
    size_t m = spec.functions.size();
    transcend::MultiPoly<transcend::Integer> P(static_cast<int>(m));
    if (spec.probe) {
        P = *spec.probe;
    } else {
        transcend::Exponents e(m, 0);
        e[0] = 1;
        P.add_term(e, transcend::Integer(1)); // default probe: X_1
    }
    Rational h(spec.field ? spec.field->degree() : 1);
    transcend::DimensionLedger led =
        transcend::ledger(spec.functions, P, spec.value_relations, delta, d, h,
                          spec.declared_t, fl.order > 0 ? static_cast<size_t>(fl.order) : 0);
    ojson rep = report_header("ledger", spec, fl);
    rep["delta"] = led.delta;
    rep["d"] = led.d;
    rep["h"] = rat_str(led.h);
    rep["p"] = led.p;
    rep["q"] = led.q;
    rep["r"] = led.r;
    rep["s"] = led.s;
    rep["u"] = led.u;
    rep["v"] = led.v;
    rep["w"] = led.w;
    rep["v_h_below_w"] = led.v_h_below_w;
    rep["u_over_dt"] = rat_str(led.u_over_dt);
    write_report(fl, rep);
}

void cmd_multiplicity(const SpecFile& spec, const Flags& fl, long M, long N, long trials) {
    size_t order = fl.order > 0 ? static_cast<size_t>(fl.order) : 256;
    transcend::MultiplicityReport mr = transcend::check_multiplicity(
        spec.functions, spec.declared_t, trials, M, N, fl.seed, order);
    ojson rep = report_header("multiplicity", spec, fl);
    rep["M"] = mr.M;
    rep["N"] = mr.N;
    rep["trials"] = mr.trials;
    rep["order"] = mr.order;
    rep["max_valuation"] = mr.max_valuation;
    rep["max_ratio"] = rat_str(mr.max_ratio);
    rep["zero_draws"] = mr.zero_draws;
    ojson hist = ojson::object();
    for (const auto& [val, count] : mr.histogram) hist[std::to_string(val)] = count;
    rep["histogram"] = hist;
    rep["valuations"] = mr.valuations;
    write_report(fl, rep);
}

void cmd_eval(const SpecFile& spec, const Flags& fl) {
    long precision = resolved_precision(spec, fl);
    transcend::ValueVector vv = spec_values(spec, precision);
    ojson rep = report_header("eval", spec, fl);
    rep["alpha"] = element_json(spec.alpha);
    ojson vals = ojson::array();
    for (size_t i = 0; i < spec.functions.size(); ++i) {
        ojson e;
        e["name"] = spec.functions[i].name;
        e["value"] = ball_json(vv.omega[i + 1]);
        vals.push_back(e);
    }
    rep["values"] = vals;
    if (spec.probe) {
        transcend::PolyValue pv = transcend::poly_value(*spec.probe, vv);
        ojson p;
        p["status"] = status_name(pv.status);
        p["value"] = ball_json(pv.value);
        rep["probe"] = p;
    }
    write_report(fl, rep);
}

transcend::ScanStrategy parse_strategy(const std::string& s) {
    if (s == "exhaustive") return transcend::ScanStrategy::exhaustive;
    if (s == "lattice") return transcend::ScanStrategy::lattice;
    throw transcend::usage_error("bad-strategy", "strategy must be exhaustive or lattice");
}

std::string csv_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void cmd_scan(const SpecFile& spec, const Flags& fl, int d, long H) {
    long precision = resolved_precision(spec, fl);
    transcend::ValueVector vv = spec_values(spec, precision);
    transcend::ScanStrategy strategy = parse_strategy(fl.strategy);

    if (fl.format == "csv") {
        std::ostringstream csv;
        csv << "degree,height,log2_abs,exponent,status\n";
        auto sink = [&](const transcend::ScanRecord& r) {
            csv << r.degree << ',' << r.height << ',' << csv_double(r.log2_abs) << ','
                << csv_double(r.exponent) << ',' << status_name(r.status) << '\n';
        };
        transcend::MeasureReport rep = transcend::liouville_scan(vv, d, H, strategy, fl.seed, sink);
        csv << "# schema,1\n";
        csv << "# total_records," << rep.total_records << '\n';
        csv << "# zero_records," << rep.zero_records << '\n';
        csv << "# c1_log2," << csv_double(rep.c1_log2) << '\n';
        csv << "# c2," << csv_double(rep.c2) << '\n';
        csv << "# min_exponent," << csv_double(rep.min_exponent) << '\n';
        csv << "# max_exponent," << csv_double(rep.max_exponent) << '\n';
        write_text(fl, csv.str());
        return;
    }

    transcend::MeasureReport rep = transcend::liouville_scan(vv, d, H, strategy, fl.seed);
    ojson out = report_header("scan", spec, fl);
    out["d"] = rep.d;
    out["H_max"] = rep.H_max;
    out["total_records"] = rep.total_records;
    out["nonzero_records"] = rep.nonzero_records;
    out["zero_records"] = rep.zero_records;
    out["c1"] = rep.c1;
    out["c1_log2"] = rep.c1_log2;
    out["c2"] = rep.c2;
    out["min_exponent"] = rep.min_exponent;
    out["max_exponent"] = rep.max_exponent;
    out["lattice_candidates"] = rep.lattice_candidates;
    out["min_record"] = rep.min_record ? record_json(*rep.min_record) : ojson(nullptr);
    out["max_record"] = rep.max_record ? record_json(*rep.max_record) : ojson(nullptr);
    out["c1_record"] = rep.c1_record ? record_json(*rep.c1_record) : ojson(nullptr);
    ojson zs = ojson::array();
    for (const auto& z : rep.zeros) zs.push_back(record_json(z));
    out["zeros"] = zs;
    write_report(fl, out);
}

void cmd_wd(const SpecFile& spec, const Flags& fl, int d, std::vector<long> heights) {
    long precision = resolved_precision(spec, fl);
    transcend::ValueVector vv = spec_values(spec, precision);
    transcend::WdReport wr = transcend::estimate_wd(vv, d, heights);
    ojson rep = report_header("wd", spec, fl);
    rep["d"] = wr.d;
    rep["schedule"] = wr.schedule;
    rep["raw"] = wr.raw;
    rep["cumulative"] = wr.cumulative;
    rep["estimate"] = wr.estimate;
    rep["zero_records"] = wr.zero_records;
    ojson zs = ojson::array();
    for (const auto& z : wr.zeros) zs.push_back(record_json(z));
    rep["zeros"] = zs;
    write_report(fl, rep);
}

void cmd_compose(const SpecFile& spec, const Flags& fl, long ell) {
    transcend::LinearSystemSpec sys = spec_system(spec);
    if (sys.kind != transcend::SystemKind::mahler)
        throw transcend::usage_error("kind-mismatch", "compose applies to mahler systems");
    ojson rep = report_header("compose", spec, fl);
    if (ell <= 0) {
        ell = transcend::choose_ell(spec.epsilon, spec.alpha, sys.q, spec.embedding);
        rep["rho"] = rat_str(spec.epsilon);
    }
    rep["ell"] = ell;
    rep["composed"] = system_json(transcend::mahler_compose(sys, static_cast<int>(ell)));
    write_report(fl, rep);
}

const char* kind_name(transcend::errkind k) {
    switch (k) {
        case transcend::errkind::usage: return "usage";
        case transcend::errkind::math: return "math";
        default: return "precision";
    }
}

int exit_code(transcend::errkind k) {
    switch (k) {
        case transcend::errkind::usage: return 1;
        case transcend::errkind::math: return 2;
        default: return 3;
    }
}

void emit_diagnostic(const std::string& kind, const std::string& code,
                     const std::string& message) {
    ojson d;
    d["schema"] = 1;
    d["error"]["kind"] = kind;
    d["error"]["code"] = code;
    d["error"]["message"] = message;
    std::cerr << d.dump(2) << std::endl;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for functional equations, relation ideals, and"
                 " approximation-exponent scans"};
    app.require_subcommand(1);

    Flags fl;
    long n = 2, vstar = 0, steps = 1, delta = 2, dsmall = 1;
    long M = 1, N = 1, trials = 50, ell = 0;
    int scan_d = 1, wd_d = 1, rel_D = 2;
    long rel_M = 0, H = 100;
    std::vector<long> heights = {16, 64, 256, 1024, 4096};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("spec", fl.spec_path, "path to the JSON function-spec file")->required();
        sub->add_option("--precision", fl.precision, "working precision in bits");
        sub->add_option("--order", fl.order, "series truncation order override");
        sub->add_option("--seed", fl.seed, "random seed for sampled trials");
        sub->add_option("--strategy", fl.strategy, "scan strategy: exhaustive|lattice");
        sub->add_option("--out", fl.out, "write the report to this path instead of stdout");
        sub->add_option("--format", fl.format, "report format: json|csv");
    };

    CLI::App* c_series = app.add_subcommand("series", "dump truncated series solutions");
    add_common(c_series);
    CLI::App* c_system = app.add_subcommand("system", "companion blocks and their direct sum");
    add_common(c_system);
    CLI::App* c_regular = app.add_subcommand("regular", "regularity verdict at alpha");
    add_common(c_regular);
    CLI::App* c_pade = app.add_subcommand("pade", "auxiliary form with prescribed vanishing");
    add_common(c_pade);
    c_pade->add_option("--n", n, "coefficient degree bound")->required();
    c_pade->add_option("--vstar", vstar, "target valuation")->required();
    CLI::App* c_iterate = app.add_subcommand("iterate", "push an auxiliary form along the system");
    add_common(c_iterate);
    c_iterate->add_option("--n", n, "coefficient degree bound")->required();
    c_iterate->add_option("--vstar", vstar, "target valuation")->required();
    c_iterate->add_option("--steps", steps, "number of operator steps");
    CLI::App* c_relations = app.add_subcommand("relations", "kernel relations and Groebner basis");
    add_common(c_relations);
    c_relations->add_option("--degree", rel_D, "X-degree bound D");
    c_relations->add_option("--mdegree", rel_M, "z-degree bound M");
    CLI::App* c_ledger = app.add_subcommand("ledger", "dimension ledger at degree delta*d");
    add_common(c_ledger);
    c_ledger->add_option("--delta", delta, "degree factor delta")->required();
    c_ledger->add_option("--d", dsmall, "degree factor d");
    CLI::App* c_mult = app.add_subcommand("multiplicity", "seeded multiplicity statistics");
    add_common(c_mult);
    c_mult->add_option("--M", M, "z-degree bound of sampled forms");
    c_mult->add_option("--N", N, "X-degree bound of sampled forms");
    c_mult->add_option("--trials", trials, "number of sampled forms");
    CLI::App* c_eval = app.add_subcommand("eval", "certified values at alpha");
    add_common(c_eval);
    CLI::App* c_scan = app.add_subcommand("scan", "exhaustive polynomial-value scan");
    add_common(c_scan);
    c_scan->add_option("--degree", scan_d, "polynomial degree bound");
    c_scan->add_option("--height", H, "height bound H_max");
    CLI::App* c_wd = app.add_subcommand("wd", "approximation exponent along a height schedule");
    add_common(c_wd);
    c_wd->add_option("--degree", wd_d, "polynomial degree bound");
    c_wd->add_option("--heights", heights, "ascending height schedule")->delimiter(',');
    CLI::App* c_compose = app.add_subcommand("compose", "compose a mahler system to radix q^ell");
    add_common(c_compose);
    c_compose->add_option("--ell", ell, "composition depth (0 = choose from rho)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        emit_diagnostic("usage", "cli-parse", e.what());
        return 1;
    }

    try {
        SpecFile spec = transcend::load_spec(fl.spec_path);
        if (app.got_subcommand(c_series)) cmd_series(spec, fl);
        else if (app.got_subcommand(c_system)) cmd_system(spec, fl);
        else if (app.got_subcommand(c_regular)) cmd_regular(spec, fl);
        else if (app.got_subcommand(c_pade)) cmd_pade(spec, fl, n, vstar);
        else if (app.got_subcommand(c_iterate)) cmd_iterate(spec, fl, n, vstar, steps);
        else if (app.got_subcommand(c_relations)) cmd_relations(spec, fl, rel_D, rel_M);
        else if (app.got_subcommand(c_ledger)) cmd_ledger(spec, fl, delta, dsmall);
        else if (app.got_subcommand(c_mult)) cmd_multiplicity(spec, fl, M, N, trials);
        else if (app.got_subcommand(c_eval)) cmd_eval(spec, fl);
        else if (app.got_subcommand(c_scan)) cmd_scan(spec, fl, scan_d, H);
        else if (app.got_subcommand(c_wd)) cmd_wd(spec, fl, wd_d, heights);
        else if (app.got_subcommand(c_compose)) cmd_compose(spec, fl, ell);
        return 0;
    } catch (const error& e) {
        emit_diagnostic(kind_name(e.kind()), e.code(), e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        emit_diagnostic("usage", "internal", e.what());
        return 1;
    }
}
