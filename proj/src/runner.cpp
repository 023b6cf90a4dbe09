#include "micz/runner.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "micz/errors.hpp"
#include "micz/floatcheck.hpp"
#include "micz/reps.hpp"

namespace micz {

namespace {

const std::vector<std::string> kSuiteOrder = {"gauge",  "closed-forms", "commutation",
                                              "quadratic", "radial",    "full-scalar",
                                              "reps",   "abstract"};

const std::set<std::string> kFloatCapable = {"gauge", "closed-forms", "commutation",
                                             "quadratic", "radial"};

} // namespace

std::string mu_str(int two_mu) {
    switch (two_mu) {
    case 0:
        return "0";
    case 1:
        return "1/2";
    default:
        return "1";
    }
}

RunPlan make_plan(const RunOptions& opt) {
    RunPlan plan;

    if (opt.n != 2 && opt.n != 3) throw ConfigError("n must be 2 or 3");
    plan.cfg.n = opt.n;

    if (opt.mu == "0")
        plan.cfg.two_mu = 0;
    else if (opt.mu == "1/2")
        plan.cfg.two_mu = 1;
    else if (opt.mu == "1")
        plan.cfg.two_mu = 2;
    else
        throw ConfigError("mu must be 0, 1/2, or 1");

    if (opt.mode == "exact")
        plan.cfg.mode = Mode::exact;
    else if (opt.mode == "float")
        plan.cfg.mode = Mode::floating;
    else
        throw ConfigError("mode must be exact or float");

    if (opt.points < 0) throw ConfigError("points must be nonnegative");
    plan.cfg.points = opt.points > 0 ? opt.points
                                     : plan.cfg.mode == Mode::floating ? 200 : 20;
    plan.cfg.seed = opt.seed;

    if (opt.kmax < 1) throw ConfigError("kmax must be at least 1");
    if (opt.lmax < 0 || opt.imax < 0) throw ConfigError("lmax and imax must be nonnegative");
    plan.kmax = opt.kmax;
    plan.lmax = opt.lmax;
    plan.imax = opt.imax;

    if (opt.format != "text" && opt.format != "json")
        throw ConfigError("format must be text or json");
    plan.format = opt.format;
    plan.timings = opt.timings;

    std::set<std::string> wanted;
    bool all = false;
    for (const std::string& s : opt.suites) {
        if (s == "all") {
            all = true;
            continue;
        }
        if (std::find(kSuiteOrder.begin(), kSuiteOrder.end(), s) == kSuiteOrder.end())
            throw ConfigError("unknown suite: " + s);
        wanted.insert(s);
    }
    if (all)
        for (const std::string& s : kSuiteOrder) {
            if (s == "full-scalar" && plan.cfg.two_mu != 0) continue;
            if (plan.cfg.mode == Mode::floating && !kFloatCapable.count(s)) continue;
            if (plan.cfg.two_mu == 2 && s != "gauge") continue;
            wanted.insert(s);
        }
    if (wanted.empty()) throw ConfigError("no suites requested");

    if (plan.cfg.mode == Mode::floating)
        for (const std::string& s : wanted)
            if (!kFloatCapable.count(s))
                throw ConfigError("suite " + s + " has no float strategy");
    if (wanted.count("full-scalar") && plan.cfg.two_mu != 0)
        throw ConfigError("full-scalar requires mu = 0");
    if (plan.cfg.two_mu == 2) {
        // negative control: the broken identity lives in the gauge suite
        if (plan.cfg.n != 2) throw ConfigError("mu = 1 is the n = 2 negative control");
        for (const std::string& s : wanted)
            if (s != "gauge") throw ConfigError("mu = 1 supports only the gauge suite");
    }

    for (const std::string& s : kSuiteOrder)
        if (wanted.count(s)) plan.suites.push_back(s);
    return plan;
}

VerificationReport run_plan(const RunPlan& plan) {
    VerificationReport rep;
    std::optional<GaugeField> gf;
    std::optional<GeneratorSet> gen;
    auto field = [&]() -> const GaugeField& {
        if (!gf) {
            gf = gauge_potential(plan.cfg);
            field_strength(*gf);
        }
        return *gf;
    };
    auto gens = [&]() -> const GeneratorSet& {
        if (!gen) gen = build_generators(field());
        return *gen;
    };
    const bool flt = plan.cfg.mode == Mode::floating;

    for (const std::string& s : plan.suites) {
        if (s == "gauge")
            rep.merge(flt ? float_gauge_identities(field()) : verify_gauge_identities(field()));
        else if (s == "closed-forms")
            rep.merge(flt ? float_closed_forms(gens()) : verify_closed_forms(gens()));
        else if (s == "commutation")
            rep.merge(flt ? float_commutation_relations(gens())
                          : verify_commutation_relations(gens()));
        else if (s == "quadratic")
            rep.merge(flt ? float_quadratic_relations(gens())
                          : verify_quadratic_relations(gens()));
        else if (s == "radial")
            rep.merge(flt ? float_radial_gram(plan.cfg, plan.kmax, plan.lmax)
                          : verify_radial_eigensystem(plan.cfg, plan.kmax, plan.lmax));
        else if (s == "full-scalar")
            rep.merge(verify_full_scalar(plan.cfg, plan.kmax, plan.lmax));
        else if (s == "reps")
            rep.merge(verify_decompositions(plan.cfg, plan.imax));
        else if (s == "abstract")
            rep.merge(abstract_algebra_checks(plan.cfg));
    }
    return rep;
}

std::string render_text(const RunPlan& plan, const VerificationReport& rep) {
    std::ostringstream os;
    os << "config: n=" << plan.cfg.n << " mu=" << mu_str(plan.cfg.two_mu) << " mode="
       << (plan.cfg.mode == Mode::floating ? "float" : "exact")
       << " points=" << plan.cfg.points << " seed=" << plan.cfg.seed << " kmax=" << plan.kmax
       << " lmax=" << plan.lmax << " imax=" << plan.imax << "\n";
    os << "suites:";
    for (const std::string& s : plan.suites) os << " " << s;
    os << "\n";
    for (const ReportItem& it : rep.items) {
        os << "[" << status_str(it.status) << "] " << it.suite << " " << it.id << " ("
           << it.strategy << ") residual=" << it.residual;
        if (plan.timings) os << " millis=" << it.millis;
        if (it.status != Status::pass && !it.witness.empty()) os << "\n    " << it.witness;
        os << "\n";
    }
    os << "summary: pass=" << rep.count(Status::pass) << " fail=" << rep.count(Status::fail)
       << " expected_fail=" << rep.count(Status::expected_fail) << "\n";
    return os.str();
}

std::string render_json(const RunPlan& plan, const VerificationReport& rep) {
    nlohmann::ordered_json j;
    j["config"] = {{"n", plan.cfg.n},
                   {"mu", mu_str(plan.cfg.two_mu)},
                   {"mode", plan.cfg.mode == Mode::floating ? "float" : "exact"},
                   {"points", plan.cfg.points},
                   {"seed", plan.cfg.seed},
                   {"kmax", plan.kmax},
                   {"lmax", plan.lmax},
                   {"imax", plan.imax},
                   {"suites", plan.suites}};
    j["items"] = nlohmann::ordered_json::array();
    for (const ReportItem& it : rep.items)
        j["items"].push_back({{"suite", it.suite},
                              {"id", it.id},
                              {"anchor", it.anchor},
                              {"strategy", it.strategy},
                              {"status", status_str(it.status)},
                              {"witness", it.witness},
                              {"residual", it.residual},
                              {"millis", plan.timings ? it.millis : 0}});
    j["summary"] = {{"pass", rep.count(Status::pass)},
                    {"fail", rep.count(Status::fail)},
                    {"expected_fail", rep.count(Status::expected_fail)}};
    return j.dump(2) + "\n";
}

int run_cli(const RunOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        RunPlan plan = make_plan(opt);
        VerificationReport rep = run_plan(plan);
        out << (plan.format == "json" ? render_json(plan, rep) : render_text(plan, rep));
        return rep.ok() ? 0 : 1;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace micz
