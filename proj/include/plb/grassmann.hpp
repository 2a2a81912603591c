// grassmann.hpp — dense exterior algebra over a small set of anticommuting
// generators; scalar coefficients are evaluated numerically pointwise.
#pragma once

#include <vector>

#include "plb/multiindex.hpp"

namespace plb {

class GrassmannAlgebra {
public:
    using Elem = std::vector<double>;  // indexed by generator bitmask

    explicit GrassmannAlgebra(int generators) : gens_(generators) {
        if (generators < 0 || generators > 20)
            throw Error("GrassmannAlgebra: generator count out of range");
        size_ = size_t(1) << generators;
    }

    int generators() const { return gens_; }
    size_t size() const { return size_; }

    Elem zero() const { return Elem(size_, 0.0); }
    Elem scalar(double v) const {
        Elem e(size_, 0.0);
        e[0] = v;
        return e;
    }
    Elem generator(int i) const {
        Elem e(size_, 0.0);
        e[size_t(1) << i] = 1.0;
        return e;
    }

    static void axpy(double a, const Elem& x, Elem& y) {
        for (size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
    }

    Elem mul(const Elem& a, const Elem& b) const {
        Elem out(size_, 0.0);
        for (size_t ma = 0; ma < size_; ++ma) {
            const double ca = a[ma];
            if (ca == 0.0) continue;
            for (size_t mb = 0; mb < size_; ++mb) {
                const double cb = b[mb];
                if (cb == 0.0 || (ma & mb)) continue;
                out[ma | mb] += wedge_sign(static_cast<Mask>(ma), static_cast<Mask>(mb)) *
                                ca * cb;
            }
        }
        return out;
    }

private:
    int gens_;
    size_t size_;
};

}  // namespace plb
