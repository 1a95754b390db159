// Uniform result type for identity-check suites.  Every check is an exact
// symbolic verdict; a failing item carries the offending component as an
// expression string.

#pragma once

#include <string>
#include <vector>

namespace sympcalc {

struct CheckItem {
    std::string name;   // identity name or operator pair
    int degree = -1;    // form degree when meaningful
    bool pass = true;
    std::string witness;  // offending component (exact), empty when passing
};

struct CheckReport {
    std::string suite;
    std::vector<CheckItem> items;

    bool all_pass() const {
        for (const auto& i : items)
            if (!i.pass) return false;
        return true;
    }
    void add(std::string name, bool pass, std::string witness = "",
             int degree = -1) {
        items.push_back(CheckItem{std::move(name), degree, pass, std::move(witness)});
    }
    void merge(const CheckReport& other) {
        for (const auto& i : other.items) items.push_back(i);
    }
};

}  // namespace sympcalc
