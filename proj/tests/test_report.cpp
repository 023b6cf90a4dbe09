#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "micz/report.hpp"

using namespace micz;

namespace {

ReportItem item(Status st, const std::string& id) {
    ReportItem it;
    it.suite = "s";
    it.id = id;
    it.status = st;
    return it;
}

} // namespace

TEST_CASE("status strings") {
    CHECK(std::string(status_str(Status::pass)) == "pass");
    CHECK(std::string(status_str(Status::fail)) == "fail");
    CHECK(std::string(status_str(Status::expected_fail)) == "expected-fail");
}

TEST_CASE("merge concatenates in order and counts per status") {
    VerificationReport a;
    a.add(item(Status::pass, "one"));
    a.add(item(Status::fail, "two"));
    VerificationReport b;
    b.add(item(Status::expected_fail, "three"));
    b.add(item(Status::pass, "four"));
    a.merge(b);
    REQUIRE(a.items.size() == 4);
    CHECK(a.items[0].id == "one");
    CHECK(a.items[3].id == "four");
    CHECK(a.count(Status::pass) == 2);
    CHECK(a.count(Status::fail) == 1);
    CHECK(a.count(Status::expected_fail) == 1);
}

TEST_CASE("a report is ok unless something failed outright") {
    VerificationReport rep;
    CHECK(rep.ok());
    rep.add(item(Status::pass, "p"));
    rep.add(item(Status::expected_fail, "x"));
    CHECK(rep.ok());
    rep.add(item(Status::fail, "f"));
    CHECK(!rep.ok());
}
