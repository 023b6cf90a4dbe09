#pragma once

#include <string>
#include <vector>

namespace micz {

enum class Status { pass, fail, expected_fail };

std::string status_str(Status s);

struct ReportItem {
    std::string suite;
    std::string id;
    std::string anchor;
    std::string strategy; // exact-normal-form | exact-pointwise | float
    Status status = Status::pass;
    std::string witness;
    std::string residual;
    long long millis = 0;
};

struct VerificationReport {
    std::vector<ReportItem> items;

    void add(ReportItem it) { items.push_back(std::move(it)); }
    void merge(VerificationReport other);
    int count(Status s) const;
    bool ok() const { return count(Status::fail) == 0; }
};

} // namespace micz
