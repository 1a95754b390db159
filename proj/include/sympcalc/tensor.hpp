// Dense tensors with RatFunc entries and small per-slot extents.  Slots are
// addressed by integer multi-indices; variance and alternation structure are
// tracked by the callers (forms keep their form slots in front, bundle value
// slots ride at the back).

#pragma once

#include <initializer_list>
#include <vector>

#include "sympcalc/ratfunc.hpp"

namespace sympcalc {

class Tensor {
public:
    Tensor(VarsPtr vars, std::vector<int> dims);

    const VarsPtr& vars() const { return vars_; }
    const std::vector<int>& dims() const { return dims_; }
    int order() const { return static_cast<int>(dims_.size()); }
    size_t size() const { return a_.size(); }

    RatFunc& operator[](size_t flat) { return a_[flat]; }
    const RatFunc& operator[](size_t flat) const { return a_[flat]; }

    size_t flat_index(const std::vector<int>& idx) const;
    RatFunc& at(const std::vector<int>& idx) { return a_[flat_index(idx)]; }
    const RatFunc& at(const std::vector<int>& idx) const {
        return a_[flat_index(idx)];
    }
    RatFunc& at(std::initializer_list<int> idx) {
        return at(std::vector<int>(idx));
    }
    const RatFunc& at(std::initializer_list<int> idx) const {
        return at(std::vector<int>(idx));
    }

    // Odometer iteration; idx must start all-zero.  Returns false after the
    // final index.
    bool next_index(std::vector<int>& idx) const;

    bool is_zero() const;
    bool same_shape(const Tensor& o) const { return dims_ == o.dims_; }

    friend Tensor operator+(const Tensor& x, const Tensor& y);
    friend Tensor operator-(const Tensor& x, const Tensor& y);
    Tensor& operator+=(const Tensor& y);
    Tensor& operator-=(const Tensor& y);
    Tensor operator-() const;
    Tensor scaled(const Rational& c) const;
    Tensor scaled(const RatFunc& c) const;
    bool operator==(const Tensor& y) const {
        return dims_ == y.dims_ && a_ == y.a_;
    }

    RatFunc zero_scalar() const { return RatFunc(vars_); }

private:
    VarsPtr vars_;
    std::vector<int> dims_;
    std::vector<size_t> strides_;
    std::vector<RatFunc> a_;
};

// Antisymmetrize the first k slots with the unweighted-average convention
// (idempotent); trailing slots are carried along.
Tensor alternate_front(const Tensor& t, int k);

// Componentwise partial derivative.
Tensor tensor_partial(const Tensor& t, int var);

}  // namespace sympcalc
