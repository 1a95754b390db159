#include "sympcalc/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sympcalc/comb.hpp"

namespace sympcalc {

Tensor::Tensor(VarsPtr vars, std::vector<int> dims)
    : vars_(std::move(vars)), dims_(std::move(dims)) {
    size_t total = 1;
    strides_.assign(dims_.size(), 1);
    for (size_t i = dims_.size(); i-- > 0;) {
        strides_[i] = total;
        total *= static_cast<size_t>(dims_[i]);
    }
    a_.assign(total, RatFunc(vars_));
}

size_t Tensor::flat_index(const std::vector<int>& idx) const {
    if (idx.size() != dims_.size())
        throw std::invalid_argument("Tensor: index arity mismatch");
    size_t f = 0;
    for (size_t i = 0; i < idx.size(); ++i) f += strides_[i] * idx[i];
    return f;
}

bool Tensor::next_index(std::vector<int>& idx) const {
    for (size_t i = idx.size(); i-- > 0;) {
        if (++idx[i] < dims_[i]) return true;
        idx[i] = 0;
    }
    return false;
}

bool Tensor::is_zero() const {
    for (const auto& v : a_)
        if (!v.is_zero()) return false;
    return true;
}

Tensor operator+(const Tensor& x, const Tensor& y) {
    Tensor r = x;
    r += y;
    return r;
}

Tensor operator-(const Tensor& x, const Tensor& y) {
    Tensor r = x;
    r -= y;
    return r;
}

Tensor& Tensor::operator+=(const Tensor& y) {
    if (dims_ != y.dims_) throw std::invalid_argument("Tensor: shape mismatch");
    for (size_t i = 0; i < a_.size(); ++i)
        if (!y.a_[i].is_zero()) a_[i] += y.a_[i];
    return *this;
}

Tensor& Tensor::operator-=(const Tensor& y) {
    if (dims_ != y.dims_) throw std::invalid_argument("Tensor: shape mismatch");
    for (size_t i = 0; i < a_.size(); ++i)
        if (!y.a_[i].is_zero()) a_[i] -= y.a_[i];
    return *this;
}

Tensor Tensor::operator-() const {
    Tensor r = *this;
    for (auto& v : r.a_) v = -v;
    return r;
}

Tensor Tensor::scaled(const Rational& c) const {
    Tensor r = *this;
    for (auto& v : r.a_)
        if (!v.is_zero()) v = v.scaled(c);
    return r;
}

Tensor Tensor::scaled(const RatFunc& c) const {
    Tensor r = *this;
    for (auto& v : r.a_)
        if (!v.is_zero()) v = v * c;
    return r;
}

Tensor alternate_front(const Tensor& t, int k) {
    if (k <= 1) return t;
    Tensor out(t.vars(), t.dims());
    // Enumerate ascending front tuples, average signed permutations of the
    // input, then write all permutations of the output tuple with signs.
    std::vector<int> front_dims(t.dims().begin(), t.dims().begin() + k);
    for (int d : front_dims)
        if (d != front_dims[0])
            throw std::invalid_argument("alternate_front: ragged form slots");
    const int n = front_dims[0];
    auto subs = k_subsets(n, k);

    std::vector<int> rest_dims(t.dims().begin() + k, t.dims().end());
    const Rational inv_fact(1, [k] {
        long long f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    }());

    std::vector<int> perm(k), full(t.order());
    for (const auto& s : subs) {
        std::vector<int> rest(rest_dims.size(), 0);
        bool more_rest = true;
        while (more_rest) {
            // average over permutations of s
            RatFunc acc(t.vars());
            perm = s;
            std::sort(perm.begin(), perm.end());
            do {
                int sign = sort_sign(perm);
                for (int i = 0; i < k; ++i) full[i] = perm[i];
                for (size_t i = 0; i < rest.size(); ++i) full[k + i] = rest[i];
                const RatFunc& v = t.at(full);
                if (!v.is_zero())
                    acc += (sign > 0 ? v : -v);
            } while (std::next_permutation(perm.begin(), perm.end()));
            acc = acc.scaled(inv_fact);
            if (!acc.is_zero()) {
                // distribute to all permutations of s with signs
                perm = s;
                do {
                    int sign = sort_sign(perm);
                    for (int i = 0; i < k; ++i) full[i] = perm[i];
                    for (size_t i = 0; i < rest.size(); ++i) full[k + i] = rest[i];
                    out.at(full) = sign > 0 ? acc : -acc;
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
            // advance rest odometer
            more_rest = false;
            for (size_t i = rest.size(); i-- > 0;) {
                if (++rest[i] < rest_dims[i]) {
                    more_rest = true;
                    break;
                }
                rest[i] = 0;
            }
            if (rest_dims.empty()) break;
        }
    }
    return out;
}

Tensor tensor_partial(const Tensor& t, int var) {
    Tensor r(t.vars(), t.dims());
    for (size_t i = 0; i < t.size(); ++i)
        if (!t[i].is_zero()) r[i] = t[i].partial(var);
    return r;
}

}  // namespace sympcalc
