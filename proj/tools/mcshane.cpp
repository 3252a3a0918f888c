// Command-line front end: identity verification runs and property suites.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mcshane/identity.hpp"
#include "mcshane/parse.hpp"
#include "mcshane/props.hpp"
#include "mcshane/report.hpp"

using namespace mcshane;

namespace {

constexpr int kPass = 0, kTolerance = 2, kDiverged = 3, kUsage = 64;

struct VerifyConfig {
    std::string command;
    std::string rep;
    double tol = 0.0;
    double trace_threshold = 0.0;
    int depth = 100000;
    std::size_t max_terms = 20000000;
    std::string route = "closed";
    std::string format = "text";
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string out;
    bool mod2pi = false;
    std::string z_branch = "smaller";
    int copies = 1;
};

struct PropsConfig {
    std::string suite;
    std::size_t samples = 0;
    std::uint64_t seed = 7;
    std::string group = "both";
    std::string format = "text";
    std::string out;
};

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw ParseError("cannot open output file " + out);
    f << text;
}

std::string echo(const VerifyConfig& c) {
    auto g = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%g", v);
        return std::string(b);
    };
    std::ostringstream o;
    o << "command=verify " << c.command << " rep=" << c.rep << " tol=" << g(c.tol)
      << " trace-threshold=" << g(c.trace_threshold) << " depth=" << c.depth << " route=" << c.route
      << " format=" << c.format << " seed=" << c.seed << " threads=" << c.threads << " mod2pi=" << c.mod2pi
      << " z-branch=" << c.z_branch;
    return o.str();
}

struct Defaults {
    const char* rep;
    double tol;
    double threshold;
};

Defaults defaults_for(const std::string& cmd) {
    if (cmd == "cusp") return {"markov:3,3,3", 1e-8, 1e6};
    if (cmd == "boundary") return {"markov:3,3,4", 1e-6, 1e6};
    if (cmd == "qf") return {"markov:3,3+0.1i", 1e-6, 1e6};
    if (cmd == "su21-cusp") return {"embed:su21:markov:3,3,3", 1e-6, 1e6};
    return {"monodromy:RL", 1e-2, 1e7};
}

int run_verify(VerifyConfig c) {
    const Defaults d = defaults_for(c.command);
    if (c.rep.empty()) c.rep = d.rep;
    if (c.tol == 0.0) c.tol = d.tol;
    if (c.trace_threshold == 0.0) c.trace_threshold = d.threshold;
    if (!(c.tol > 0.0)) throw ParseError("--tol must be positive");
    if (!(c.trace_threshold > 2.0)) throw ParseError("--trace-threshold must exceed 2");

    SumPolicy pol;
    pol.trace_threshold = c.trace_threshold;
    pol.max_depth = c.depth;
    pol.max_terms = c.max_terms;
    pol.route = c.route == "definitional" ? RouteSel::definitional
                : c.route == "both"       ? RouteSel::both
                                          : RouteSel::closed;
    pol.threads = std::max(1u, c.threads);

    const RepSpec spec = parse_rep(c.rep);
    Representation rep = build_rep(spec, c.z_branch == "larger");
    IdentityReport r;
    bool binding_ok = true;
    if (c.command == "cusp" || c.command == "qf") {
        if (!rep.cusp || rep.target == Group::SU21) throw DomainError("verify " + c.command + ": needs a cusped torus");
        if (c.command == "qf" && spec.kind != RepKind::markov_qf && rep.flavor != Flavor::quasifuchsian)
            throw DomainError("verify qf: needs markov:x,y or a complex cusped triple");
        r = sum_cusp_identity(rep, pol, c.rep);
    } else if (c.command == "boundary") {
        if (rep.cusp) throw DomainError("verify boundary: needs a holed torus (boundary trace beyond +-2)");
        r = sum_boundary_identity(rep, pol, c.rep);
    } else if (c.command == "su21-cusp") {
        if (rep.target != Group::SU21) {
            if (rep.flavor != Flavor::fuchsian || rep.target != Group::SL2R)
                throw DomainError("verify su21-cusp: needs a real Fuchsian cusped torus");
            rep = embed_cfuchsian(rep);
        }
        r = sum_su21_cusp(rep, pol, c.rep);
    } else {
        if (rep.flavor != Flavor::fibered) throw DomainError("verify " + c.command + ": needs monodromy:<word>");
        MappingTorusPolicy mp;
        mp.sum = pol;
        mp.copies = c.copies;
        mp.shells.clear();
        for (double T = 1e3; T <= c.trace_threshold * (1 + 1e-12); T *= 10.0) mp.shells.push_back(T);
        if (mp.shells.empty() || mp.shells.back() < c.trace_threshold) mp.shells.push_back(c.trace_threshold);
        r = sum_mapping_torus(rep, mp, c.rep);
        binding_ok = shells_shrinking(r, std::min<std::size_t>(5, r.shells.size()));
    }
    r.seed = c.seed;

    std::string body;
    if (c.format == "json") {
        body = to_json(r);
        body.insert(body.size() - 1, ",\"config\":" + json_string(echo(c)));
        body += "\n";
    } else if (c.format == "csv") {
        body = "# " + echo(c) + "\n" + to_csv(r);
    } else {
        body = "# " + echo(c) + "\n" + to_text(r);
    }
    emit(body, c.out);

    if (r.diverged) return kDiverged;
    const double res = c.mod2pi ? r.residual_mod2pi : std::abs(r.residual);
    if (!r.shells.empty()) {
        if (res > c.tol) std::cerr << "warning: |sum| = " << num(res) << " exceeds " << num(c.tol) << "\n";
        return binding_ok ? kPass : kTolerance;
    }
    return res <= c.tol ? kPass : kTolerance;
}

int run_props(const PropsConfig& c) {
    std::vector<SuiteResult> suites;
    auto n = [&](std::size_t def) { return c.samples ? c.samples : def; };
    if (c.suite == "crossratio") {
        suites.push_back(crossratio_suite_sphere(n(1000), c.seed));
        suites.push_back(crossratio_suite_heisenberg(n(1000), c.seed + 1));
        suites.push_back(crossratio_invariance_suite(n(1000), c.seed + 2));
    } else if (c.suite == "pp") {
        suites.push_back(pp_suite(n(1000), c.seed));
    } else if (c.suite == "holder") {
        suites.push_back(holder_suite(n(10000), c.seed));
    } else if (c.suite == "cocycle") {
        if (c.group != "su21") suites.push_back(cocycle_suite_sl2c(n(1000), c.seed));
        if (c.group != "sl2c") suites.push_back(cocycle_suite_su21(n(1000), c.seed + 1));
    } else {
        suites.push_back(period_suite(n(200), c.seed));
    }
    std::string body;
    bool ok = true;
    for (const auto& s : suites) {
        ok = ok && s.pass();
        body += c.format == "json" ? to_json(s) + "\n" : to_text(s);
    }
    emit(body, c.out);
    return ok ? kPass : kTolerance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"McShane-type identity verification"};
    app.require_subcommand(1);

    VerifyConfig vc;
    auto* verify = app.add_subcommand("verify", "sum gap functions over pants and compare with the target");
    verify->require_subcommand(1);
    for (const char* name : {"cusp", "boundary", "qf", "su21-cusp", "bowditch", "mapping-torus"}) {
        auto* s = verify->add_subcommand(name, std::string("identity run: ") + name);
        s->add_option("--rep", vc.rep, "representation string")->envname("MCSHANE_REP");
        s->add_option("--tol", vc.tol, "tolerance on |residual|")->envname("MCSHANE_TOL");
        s->add_option("--trace-threshold", vc.trace_threshold, "prune slopes with |trace| above this")
            ->envname("MCSHANE_TRACE_THRESHOLD");
        s->add_option("--depth", vc.depth, "maximum Farey depth")->envname("MCSHANE_DEPTH");
        s->add_option("--max-terms", vc.max_terms, "term budget; exceeding it reports divergence")
            ->envname("MCSHANE_MAX_TERMS");
        s->add_option("--route", vc.route, "gap route")
            ->check(CLI::IsMember({"definitional", "closed", "both"}))
            ->envname("MCSHANE_ROUTE");
        s->add_option("--format", vc.format, "output format")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->envname("MCSHANE_FORMAT");
        s->add_option("--seed", vc.seed, "seed echoed in the report")->envname("MCSHANE_SEED");
        s->add_option("--threads", vc.threads, "worker threads")->envname("MCSHANE_THREADS");
        s->add_option("--out", vc.out, "write the report to FILE")->envname("MCSHANE_OUT");
        s->add_flag("--mod2pi", vc.mod2pi, "compare the residual modulo 2 pi i")->envname("MCSHANE_MOD2PI");
        s->add_option("--z-branch", vc.z_branch, "root for markov:x,y")
            ->check(CLI::IsMember({"smaller", "larger"}))
            ->envname("MCSHANE_Z_BRANCH");
        s->add_option("--copies", vc.copies, "fundamental domain copies (mapping torus)")
            ->envname("MCSHANE_COPIES");
        s->callback([s, &vc] { vc.command = s->get_name(); });
    }

    PropsConfig pc;
    auto* props = app.add_subcommand("props", "run property suites");
    props->require_subcommand(1);
    for (const char* name : {"crossratio", "pp", "holder", "cocycle", "period"}) {
        auto* s = props->add_subcommand(name, std::string("property suite: ") + name);
        s->add_option("--samples", pc.samples, "samples per suite")->envname("MCSHANE_SAMPLES");
        s->add_option("--seed", pc.seed, "random seed")->envname("MCSHANE_SEED");
        s->add_option("--format", pc.format, "output format")
            ->check(CLI::IsMember({"json", "text"}))
            ->envname("MCSHANE_FORMAT");
        s->add_option("--out", pc.out, "write the summary to FILE")->envname("MCSHANE_OUT");
        if (std::string(name) == "cocycle")
            s->add_option("--group", pc.group, "group type")
                ->check(CLI::IsMember({"sl2c", "su21", "both"}))
                ->envname("MCSHANE_GROUP");
        s->callback([s, &pc] { pc.suite = s->get_name(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    try {
        if (!vc.command.empty()) return run_verify(vc);
        return run_props(pc);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDiverged;
    }
}
