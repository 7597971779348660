#pragma once

#include <string>
#include <vector>

namespace weilcalc {

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

// Named exact pass/fail outcomes of a checker suite.
class Report {
public:
    void add(std::string name, bool pass, std::string detail = {}) {
        checks_.push_back({std::move(name), pass, std::move(detail)});
    }
    void merge(const Report& o) { checks_.insert(checks_.end(), o.checks_.begin(), o.checks_.end()); }

    bool ok() const {
        for (const auto& c : checks_)
            if (!c.pass) return false;
        return true;
    }
    bool passed(const std::string& name) const {
        for (const auto& c : checks_)
            if (c.name == name) return c.pass;
        return false;
    }
    const std::vector<Check>& checks() const { return checks_; }

private:
    std::vector<Check> checks_;
};

}  // namespace weilcalc
