#pragma once

// Independent reference implementations used only by tests. They share no
// code with the library: plain loops over std::vector, no Eigen.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major rows

inline double sig(double a) { return 1.0 / (1.0 + std::exp(-a)); }

// W · [h, x] + b, written out term by term.
inline Vec affine(const Mat& w, const Vec& b, const Vec& h, const Vec& x) {
    Vec out(b.size());
    for (std::size_t r = 0; r < b.size(); ++r) {
        double acc = b[r];
        for (std::size_t c = 0; c < h.size(); ++c) acc += w[r][c] * h[c];
        for (std::size_t c = 0; c < x.size(); ++c) acc += w[r][h.size() + c] * x[c];
        out[r] = acc;
    }
    return out;
}

struct Lstm {
    Mat wf, wi, wk, wo;
    Vec bf, bi, bk, bo;
};

struct LstmOut {
    Vec h, c;
    Vec f, i, k, o;
};

inline LstmOut lstm_step(const Lstm& p, const Vec& x, const Vec& h_prev, const Vec& c_prev) {
    const Vec af = affine(p.wf, p.bf, h_prev, x);
    const Vec ak = affine(p.wk, p.bk, h_prev, x);
    const Vec ai = affine(p.wi, p.bi, h_prev, x);
    const Vec ao = affine(p.wo, p.bo, h_prev, x);
    LstmOut out;
    const std::size_t n = h_prev.size();
    out.f.resize(n), out.i.resize(n), out.k.resize(n), out.o.resize(n), out.c.resize(n), out.h.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.f[j] = sig(af[j]);
        out.k[j] = std::tanh(ak[j]);
        out.i[j] = sig(ai[j]);
        out.c[j] = out.f[j] * c_prev[j] + out.i[j] * out.k[j];
        out.o[j] = sig(ao[j]);
        out.h[j] = out.o[j] * std::tanh(out.c[j]);
    }
    return out;
}

struct Gru {
    Mat wr, wu, wh;
    Vec br, bu, bh;
};

struct GruOut {
    Vec h, r, u, cand;
};

inline GruOut gru_step(const Gru& p, const Vec& x, const Vec& h_prev) {
    const std::size_t n = h_prev.size();
    GruOut out;
    const Vec ar = affine(p.wr, p.br, h_prev, x);
    const Vec au = affine(p.wu, p.bu, h_prev, x);
    out.r.resize(n), out.u.resize(n), out.cand.resize(n), out.h.resize(n);
    Vec rh(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.r[j] = sig(ar[j]);
        out.u[j] = sig(au[j]);
        rh[j] = out.r[j] * h_prev[j];
    }
    const Vec ah = affine(p.wh, p.bh, rh, x);
    for (std::size_t j = 0; j < n; ++j) {
        out.cand[j] = std::tanh(ah[j]);
        out.h[j] = (1.0 - out.u[j]) * h_prev[j] + out.u[j] * out.cand[j];
    }
    return out;
}

/// Central differences of `loss` over every entry of `theta`.
inline Vec central_differences(Vec theta, const std::function<double(const Vec&)>& loss, double eps) {
    Vec grad(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double saved = theta[i];
        theta[i] = saved + eps;
        const double up = loss(theta);
        theta[i] = saved - eps;
        const double down = loss(theta);
        theta[i] = saved;
        grad[i] = (up - down) / (2.0 * eps);
    }
    return grad;
}

/// |a - n| / max(|a|, |n|, floor). The floor turns the check into an
/// absolute one for entries whose true value is essentially zero.
inline double relative_error(double analytic, double numeric, double floor = 1e-6) {
    const double scale = std::max({std::abs(analytic), std::abs(numeric), floor});
    return std::abs(analytic - numeric) / scale;
}

/// AR(2) with intercept by the normal equations (XᵀX)β = Xᵀy, solved with
/// Gaussian elimination and partial pivoting. Returns {c, phi1, phi2}.
inline Vec ar2_normal_equations(const Vec& y) {
    double a[3][4] = {};
    for (std::size_t t = 2; t < y.size(); ++t) {
        const double row[3] = {1.0, y[t - 1], y[t - 2]};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) a[r][c] += row[r] * row[c];
            a[r][3] += row[r] * y[t];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        for (int c = 0; c < 4; ++c) std::swap(a[col][c], a[piv][c]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return {a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
}

}  // namespace oracle
