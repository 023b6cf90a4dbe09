#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "micz/errors.hpp"
#include "micz/runner.hpp"

using namespace micz;

namespace {

RunOptions base() {
    RunOptions opt;
    opt.suites = {"reps"};
    opt.imax = 1;
    return opt;
}

} // namespace

TEST_CASE("option validation rejects out-of-range input") {
    auto bad = [](auto&& tweak) {
        RunOptions opt = base();
        tweak(opt);
        CHECK_THROWS_AS(make_plan(opt), ConfigError);
    };
    bad([](RunOptions& o) { o.n = 5; });
    bad([](RunOptions& o) { o.mu = "2"; });
    bad([](RunOptions& o) { o.mu = "0.5"; });
    bad([](RunOptions& o) { o.mode = "interval"; });
    bad([](RunOptions& o) { o.format = "xml"; });
    bad([](RunOptions& o) { o.points = -3; });
    bad([](RunOptions& o) { o.kmax = 0; });
    bad([](RunOptions& o) { o.suites = {"spectral"}; });
    bad([](RunOptions& o) { o.suites = {}; });
    bad([](RunOptions& o) { o.mode = "float"; }); // reps has no float strategy
    bad([](RunOptions& o) { o.suites = {"full-scalar"}; }); // needs mu = 0
    bad([](RunOptions& o) { o.mu = "1"; }); // mu = 1 supports only gauge
    bad([](RunOptions& o) {
        o.n = 3;
        o.mu = "1";
        o.suites = {"gauge"};
    });
}

TEST_CASE("mode defaults fill in the sample count") {
    RunOptions opt = base();
    CHECK(make_plan(opt).cfg.points == 20);
    opt.suites = {"gauge"};
    opt.mode = "float";
    CHECK(make_plan(opt).cfg.points == 200);
    opt.points = 7;
    CHECK(make_plan(opt).cfg.points == 7);
}

TEST_CASE("the all alias expands in fixed order with charge-aware omissions") {
    RunOptions opt;
    opt.mu = "0";
    std::vector<std::string> full = {"gauge",  "closed-forms", "commutation", "quadratic",
                                     "radial", "full-scalar",  "reps",        "abstract"};
    CHECK(make_plan(opt).suites == full);

    opt.mu = "1/2"; // no scalar sector at half charge
    std::vector<std::string> no_scalar = {"gauge",  "closed-forms", "commutation",
                                          "quadratic", "radial",    "reps",
                                          "abstract"};
    CHECK(make_plan(opt).suites == no_scalar);

    opt.mode = "float"; // exact-only suites drop out silently under the alias
    std::vector<std::string> floats = {"gauge", "closed-forms", "commutation", "quadratic",
                                       "radial"};
    CHECK(make_plan(opt).suites == floats);

    opt.mode = "exact";
    opt.suites = {"radial", "gauge", "gauge"};
    std::vector<std::string> dedup = {"gauge", "radial"};
    CHECK(make_plan(opt).suites == dedup);

    opt.suites = {"all"};
    opt.mu = "1";
    std::vector<std::string> control = {"gauge"};
    CHECK(make_plan(opt).suites == control);
}

TEST_CASE("rendering is deterministic and carries the summary") {
    RunPlan plan = make_plan(base());
    VerificationReport rep = run_plan(plan);
    CHECK(rep.ok());
    std::string t1 = render_text(plan, rep);
    std::string t2 = render_text(plan, run_plan(plan));
    CHECK(t1 == t2);
    CHECK(t1.find("config: n=2 mu=1/2 mode=exact") != std::string::npos);
    CHECK(t1.find("summary: pass=9 fail=0 expected_fail=0") != std::string::npos);

    std::string j1 = render_json(plan, rep);
    std::string j2 = render_json(plan, run_plan(plan));
    CHECK(j1 == j2);
    CHECK(j1.find("\"suite\": \"reps\"") != std::string::npos);
    CHECK(j1.find("\"expected_fail\": 0") != std::string::npos);
    CHECK(j1.find("\"millis\": 0") != std::string::npos);
}

TEST_CASE("driver exit codes and negative-control marking") {
    {
        std::ostringstream out, err;
        RunOptions opt = base();
        CHECK(run_cli(opt, out, err) == 0);
        CHECK(err.str().empty());
        CHECK(out.str().find("[pass]") != std::string::npos);
    }
    {
        std::ostringstream out, err;
        RunOptions opt;
        opt.n = 7;
        CHECK(run_cli(opt, out, err) == 2);
        CHECK(err.str().find("config error:") != std::string::npos);
    }
    {
        std::ostringstream out, err;
        RunOptions opt;
        opt.mu = "1";
        opt.suites = {"gauge"};
        opt.points = 5;
        CHECK(run_cli(opt, out, err) == 0);
        CHECK(out.str().find("[expected-fail]") != std::string::npos);
        CHECK(out.str().find("[fail]") == std::string::npos);
    }
}
