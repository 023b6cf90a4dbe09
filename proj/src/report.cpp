#include "micz/report.hpp"

#include <utility>

namespace micz {

std::string status_str(Status s) {
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    default:
        return "expected-fail";
    }
}

void VerificationReport::merge(VerificationReport other) {
    items.insert(items.end(), std::make_move_iterator(other.items.begin()),
                 std::make_move_iterator(other.items.end()));
}

int VerificationReport::count(Status s) const {
    int c = 0;
    for (const auto& it : items)
        if (it.status == s) ++c;
    return c;
}

} // namespace micz
