#ifndef TELSIG_VARTABLE_HPP
#define TELSIG_VARTABLE_HPP

#include <memory>
#include <string>
#include <vector>

#include "telsig/error.hpp"

namespace telsig {

// An ordered list of named variables, each with a positive integer weight.
// One shared table backs every polynomial of a given ring: kappa symbols for
// curve coefficients, t_k for Sato variables (weight k), z_i for local
// coordinates (weight 1), x_i/y_i for curve variables (weight a_i).
class VarTable {
public:
    struct Var {
        std::string name;
        long weight = 1;
    };

    VarTable() = default;
    explicit VarTable(std::vector<Var> vars) : vars_(std::move(vars)) {
        for (const auto& v : vars_)
            if (v.weight <= 0) fail(errc::input, "variable weight must be positive: " + v.name);
    }

    size_t size() const { return vars_.size(); }
    const Var& var(size_t i) const { return vars_[i]; }
    const std::string& name(size_t i) const { return vars_[i].name; }
    long weight(size_t i) const { return vars_[i].weight; }

    // -1 when absent.
    long index_of(const std::string& name) const {
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return static_cast<long>(i);
        return -1;
    }

    bool same_as(const VarTable& o) const {
        if (this == &o) return true;
        if (vars_.size() != o.vars_.size()) return false;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name != o.vars_[i].name || vars_[i].weight != o.vars_[i].weight) return false;
        return true;
    }

private:
    std::vector<Var> vars_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline VarTablePtr make_vartable(std::vector<VarTable::Var> vars) {
    return std::make_shared<const VarTable>(std::move(vars));
}

// The empty table: ring of constants.
inline const VarTablePtr& empty_vartable() {
    static const VarTablePtr t = std::make_shared<const VarTable>();
    return t;
}

} // namespace telsig

#endif
