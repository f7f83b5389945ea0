#include "bouss/fast_solver.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bouss {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Vectorized mixed-radix complex DFT. Values are rows of W doubles; the
// butterflies run over whole rows so the x-columns form the vector lanes.
// ---------------------------------------------------------------------------

int largest_radix(int n) {
    for (int r : {5, 4, 3, 2})
        if (n % r == 0) return r;
    return 0;
}

bool smooth_2345(int n) {
    if (n < 1) return false;
    for (int r : {2, 3, 5})
        while (n % r == 0) n /= r;
    return n == 1;
}

struct FftPlan {
    int len = 0;
    std::vector<int> radices;              // applied outermost first
    std::vector<int> lens;                 // level lengths, lens[0] = len
    std::vector<std::vector<double>> wre;  // per level: cos(2 pi t / n)
    std::vector<std::vector<double>> wim;  // per level: -sin(2 pi t / n)

    explicit FftPlan(int n) : len(n) {
        int rem = n;
        while (rem > 1) {
            const int r = largest_radix(rem);
            radices.push_back(r);
            lens.push_back(rem);
            auto& cre = wre.emplace_back(std::vector<double>(rem));
            auto& cim = wim.emplace_back(std::vector<double>(rem));
            for (int t = 0; t < rem; ++t) {
                cre[t] = std::cos(2.0 * kPi * t / rem);
                cim[t] = -std::sin(2.0 * kPi * t / rem);
            }
            rem /= r;
        }
    }
};

// result lands in dst; src is destroyed. sign=-1 forward, +1 inverse (unscaled)
void dft_rec(const FftPlan& plan, int level, int n, int W, int sign,
             double* sre, double* sim, double* dre, double* dim) {
    if (n == 1) {
        std::memcpy(dre, sre, sizeof(double) * W);
        std::memcpy(dim, sim, sizeof(double) * W);
        return;
    }
    const int r = plan.radices[level];
    const int m = n / r;
    if (m > 1) {
        // decimate src row (r*b + a) into dst row (a*m + b)
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < m; ++b) {
                std::memcpy(dre + std::size_t(a * m + b) * W,
                            sre + std::size_t(r * b + a) * W, sizeof(double) * W);
                std::memcpy(dim + std::size_t(a * m + b) * W,
                            sim + std::size_t(r * b + a) * W, sizeof(double) * W);
            }
        for (int a = 0; a < r; ++a)
            dft_rec(plan, level + 1, m, W, sign, dre + std::size_t(a * m) * W,
                    dim + std::size_t(a * m) * W, sre + std::size_t(a * m) * W,
                    sim + std::size_t(a * m) * W);
        // sub-results now sit in src slices
    }
    const double* tre = plan.wre[level].data();
    const double* tim = plan.wim[level].data();
    for (int k = 0; k < n; ++k) {
        const int km = k % m;
        double* __restrict outre = dre + std::size_t(k) * W;
        double* __restrict outim = dim + std::size_t(k) * W;
        std::memcpy(outre, sre + std::size_t(km) * W, sizeof(double) * W);
        std::memcpy(outim, sim + std::size_t(km) * W, sizeof(double) * W);
        for (int a = 1; a < r; ++a) {
            const int t = int((std::int64_t(a) * k) % n);
            const double c = tre[t];
            const double s = (sign < 0) ? tim[t] : -tim[t];
            const double* __restrict inre = sre + std::size_t(a * m + km) * W;
            const double* __restrict inim = sim + std::size_t(a * m + km) * W;
            for (int w = 0; w < W; ++w) {
                outre[w] += c * inre[w] - s * inim[w];
                outim[w] += c * inim[w] + s * inre[w];
            }
        }
    }
}

struct Scratch {
    std::vector<double> sre, sim, dre, dim;
    void ensure(std::size_t n) {
        if (sre.size() < n) {
            sre.resize(n);
            sim.resize(n);
            dre.resize(n);
            dim.resize(n);
        }
    }
};

Scratch& tls_scratch() {
    thread_local Scratch s;
    return s;
}

// ---------------------------------------------------------------------------
// Trigonometric y-transforms on top of the length-2M DFT. Column pairs are
// packed as real + i*imag ("two for one"); the unpack uses the Hermitian
// split  Za_k = (Z_k + conj(Z_mk))/2,  Zb_k = -i (Z_k - conj(Z_mk))/2.
// ---------------------------------------------------------------------------

enum class TKind { dst1, dst2, dct1, dct2 };

struct YTransform {
    TKind kind;
    int M = 0;  // vertical cell count
    int K = 0;  // transform size = row count of the field
    bool fft = false;
    std::unique_ptr<FftPlan> fplan;
    std::vector<double> lambda;   // eigenvalues of the 1D y-operator
    std::vector<double> dnorm;    // raw-to-coefficient normalizers
    std::vector<double> dense_S;  // K x K basis, S[j*K + m] = basis_m(j)
    std::vector<double> dense_F;  // K x K raw forward

    void init(TKind k, int M_, double h);
    // raw forward: out[m] = sum_j F[m][j] in[j]; coefficients are raw/dnorm
    void forward_raw(const double* in, int W, double* out) const;
    // inverse: out[j] = sum_m S[j][m] coef[m]
    void apply_S(const double* coef, int W, double* out) const;

private:
    void fft_pass(bool inverse_dir, const double* in, int W, double* out) const;
    void dense_apply(const std::vector<double>& Mx, const double* in, int W,
                     double* out) const;
};

void YTransform::init(TKind k, int M_, double h) {
    kind = k;
    M = M_;
    const double ih2 = 1.0 / (h * h);
    switch (kind) {
        case TKind::dst1: K = M - 1; break;
        case TKind::dst2: K = M; break;
        case TKind::dct2: K = M; break;
        case TKind::dct1: K = M + 1; break;
    }
    lambda.resize(K);
    dnorm.assign(K, 0.5 * M);
    for (int m = 0; m < K; ++m) {
        switch (kind) {
            case TKind::dst1:
            case TKind::dst2: lambda[m] = 2.0 * ih2 * (1.0 - std::cos(kPi * (m + 1) / M)); break;
            case TKind::dct1:
            case TKind::dct2: lambda[m] = 2.0 * ih2 * (1.0 - std::cos(kPi * m / M)); break;
        }
    }
    if (kind == TKind::dst2) dnorm[M - 1] = double(M);
    if (kind == TKind::dct2) dnorm[0] = double(M);
    if (kind == TKind::dct1) dnorm[0] = dnorm[M] = double(M);

    // below ~100 rows the dense basis multiply beats the transform overhead
    fft = smooth_2345(2 * M) && M >= 96;
    if (fft) {
        fplan = std::make_unique<FftPlan>(2 * M);
        return;
    }
    dense_S.resize(std::size_t(K) * K);
    dense_F.resize(std::size_t(K) * K);
    for (int j = 0; j < K; ++j) {
        for (int m = 0; m < K; ++m) {
            double s = 0.0;
            switch (kind) {
                case TKind::dst1: s = std::sin(kPi * (j + 1) * (m + 1) / M); break;
                case TKind::dst2: s = std::sin(kPi * (m + 1) * (2 * j + 1) / (2.0 * M)); break;
                case TKind::dct2: s = std::cos(kPi * m * (2 * j + 1) / (2.0 * M)); break;
                case TKind::dct1: s = std::cos(kPi * j * m / M); break;
            }
            dense_S[std::size_t(j) * K + m] = s;
            const double wj = (kind == TKind::dct1 && (j == 0 || j == M)) ? 0.5 : 1.0;
            dense_F[std::size_t(m) * K + j] = wj * s;
        }
    }
}

void YTransform::dense_apply(const std::vector<double>& Mx, const double* in, int W,
                             double* out) const {
    // output rows blocked in groups of four so each input row streams once
    // per block and the accumulators stay cache resident
    const int nblk = (K + 3) / 4;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (std::size_t(K) * K * W > 2000000)
#endif
    for (int blk = 0; blk < nblk; ++blk) {
        const int m0 = 4 * blk;
        const int mb = std::min(4, K - m0);
        double* __restrict o0 = out + std::size_t(m0) * W;
        double* __restrict o1 = out + std::size_t(std::min(m0 + 1, K - 1)) * W;
        double* __restrict o2 = out + std::size_t(std::min(m0 + 2, K - 1)) * W;
        double* __restrict o3 = out + std::size_t(std::min(m0 + 3, K - 1)) * W;
        std::memset(o0, 0, sizeof(double) * std::size_t(mb) * W);
        const double* r0 = Mx.data() + std::size_t(m0) * K;
        const double* r1 = Mx.data() + std::size_t(std::min(m0 + 1, K - 1)) * K;
        const double* r2 = Mx.data() + std::size_t(std::min(m0 + 2, K - 1)) * K;
        const double* r3 = Mx.data() + std::size_t(std::min(m0 + 3, K - 1)) * K;
        if (mb == 4) {
            for (int j = 0; j < K; ++j) {
                const double f0 = r0[j], f1 = r1[j], f2 = r2[j], f3 = r3[j];
                const double* __restrict i0 = in + std::size_t(j) * W;
                for (int w = 0; w < W; ++w) {
                    const double x = i0[w];
                    o0[w] += f0 * x;
                    o1[w] += f1 * x;
                    o2[w] += f2 * x;
                    o3[w] += f3 * x;
                }
            }
        } else {
            for (int m = m0; m < m0 + mb; ++m) {
                double* __restrict o = out + std::size_t(m) * W;
                const double* row = Mx.data() + std::size_t(m) * K;
                for (int j = 0; j < K; ++j) {
                    const double f = row[j];
                    const double* __restrict i0 = in + std::size_t(j) * W;
                    for (int w = 0; w < W; ++w) o[w] += f * i0[w];
                }
            }
        }
    }
}

void YTransform::fft_pass(bool inverse_dir, const double* in, int W, double* out) const {
    // dst1 and dct1 are self-adjoint: the inverse runs the forward machinery
    // (dct1 with its end rows doubled to undo the half weights).
    const bool freq_to_rows = inverse_dir && (kind == TKind::dct2 || kind == TKind::dst2);
    const int n = 2 * M;
    const int Wp = (W + 1) / 2;
    const int chunk = 128;  // column pairs per block
    const int nblocks = (Wp + chunk - 1) / chunk;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (nblocks > 1 && std::size_t(n) * W > 16384)
#endif
    for (int blk = 0; blk < nblocks; ++blk) {
        const int p0 = blk * chunk;
        const int pw = std::min(chunk, Wp - p0);
        Scratch& sc = tls_scratch();
        sc.ensure(std::size_t(n) * pw);
        double* zre = sc.sre.data();
        double* zim = sc.sim.data();
        double* yre = sc.dre.data();
        double* yim = sc.dim.data();

        auto in_at = [&](int row, int p, bool bcol) -> double {
            const int c = 2 * (p0 + p) + (bcol ? 1 : 0);
            return (c < W) ? in[std::size_t(row) * W + c] : 0.0;
        };

        // ---- pack rows of z, column pair (a, b) as re + i*im ----
        std::memset(zre, 0, sizeof(double) * std::size_t(n) * pw);
        std::memset(zim, 0, sizeof(double) * std::size_t(n) * pw);
        if (!freq_to_rows) {
            switch (kind) {
                case TKind::dst1:
                    for (int j = 1; j < M; ++j)
                        for (int p = 0; p < pw; ++p) {
                            const double a = in_at(j - 1, p, false);
                            const double b = in_at(j - 1, p, true);
                            zre[std::size_t(j) * pw + p] = a;
                            zim[std::size_t(j) * pw + p] = b;
                            zre[std::size_t(n - j) * pw + p] = -a;
                            zim[std::size_t(n - j) * pw + p] = -b;
                        }
                    break;
                case TKind::dct1:
                    for (int j = 0; j <= M; ++j)
                        for (int p = 0; p < pw; ++p) {
                            const double dbl =
                                (inverse_dir && (j == 0 || j == M)) ? 2.0 : 1.0;
                            const double a = dbl * in_at(j, p, false);
                            const double b = dbl * in_at(j, p, true);
                            zre[std::size_t(j) * pw + p] = a;
                            zim[std::size_t(j) * pw + p] = b;
                            if (j > 0 && j < M) {
                                zre[std::size_t(n - j) * pw + p] = a;
                                zim[std::size_t(n - j) * pw + p] = b;
                            }
                        }
                    break;
                case TKind::dct2:
                case TKind::dst2:
                    for (int j = 0; j < M; ++j)
                        for (int p = 0; p < pw; ++p) {
                            const double flip =
                                (kind == TKind::dst2 && (j & 1)) ? -1.0 : 1.0;
                            const double a = flip * in_at(j, p, false);
                            const double b = flip * in_at(j, p, true);
                            zre[std::size_t(j) * pw + p] = a;
                            zim[std::size_t(j) * pw + p] = b;
                            zre[std::size_t(n - 1 - j) * pw + p] = a;
                            zim[std::size_t(n - 1 - j) * pw + p] = b;
                        }
                    break;
            }
        } else {
            // Rebuild the packed spectrum Z = Za + i Zb with the mirrored-real
            // structure of the forward transform, then one inverse DFT yields
            // both output columns: Z_k = 2 D_k coef_k e^{+i pi k/(2M)}.
            auto put = [&](int k, int p, double are, double aim_, double bre, double bim_) {
                zre[std::size_t(k) * pw + p] = are - bim_;
                zim[std::size_t(k) * pw + p] = aim_ + bre;
            };
            for (int k = 0; k < M; ++k) {
                const int src = (kind == TKind::dst2) ? (M - 1 - k) : k;
                const double scale = dnorm[src];
                const double cc = std::cos(0.5 * kPi * k / M);
                const double ss = std::sin(0.5 * kPi * k / M);
                for (int p = 0; p < pw; ++p) {
                    const double mag_a = 2.0 * scale * in_at(src, p, false);
                    const double mag_b = 2.0 * scale * in_at(src, p, true);
                    put(k, p, mag_a * cc, mag_a * ss, mag_b * cc, mag_b * ss);
                    if (k > 0)
                        put(n - k, p, mag_a * cc, -mag_a * ss, mag_b * cc, -mag_b * ss);
                }
            }
        }

        dft_rec(*fplan, 0, n, pw, freq_to_rows ? +1 : -1, zre, zim, yre, yim);

        // ---- unpack ----
        auto R = [&](int k, int p) { return yre[std::size_t(k) * pw + p]; };
        auto I = [&](int k, int p) { return yim[std::size_t(k) * pw + p]; };
        auto store = [&](int row, int p, double va, double vb) {
            const int c = 2 * (p0 + p);
            out[std::size_t(row) * W + c] = va;
            if (c + 1 < W) out[std::size_t(row) * W + c + 1] = vb;
        };
        if (!freq_to_rows) {
            for (int m = 0; m < K; ++m) {
                for (int p = 0; p < pw; ++p) {
                    double va = 0, vb = 0;
                    switch (kind) {
                        case TKind::dst1: {
                            const int k = m + 1, mk = n - k;
                            va = -0.25 * (I(k, p) - I(mk, p));
                            vb = 0.25 * (R(k, p) - R(mk, p));
                            break;
                        }
                        case TKind::dct1: {
                            const int k = m, mk = (n - k) % n;
                            va = 0.25 * (R(k, p) + R(mk, p));
                            vb = 0.25 * (I(k, p) + I(mk, p));
                            break;
                        }
                        case TKind::dct2:
                        case TKind::dst2: {
                            const int k = (kind == TKind::dst2) ? (M - 1 - m) : m;
                            const int mk = (n - k) % n;
                            const double cc = std::cos(0.5 * kPi * k / M);
                            const double ss = std::sin(0.5 * kPi * k / M);
                            const double reA = 0.5 * (R(k, p) + R(mk, p));
                            const double imA = 0.5 * (I(k, p) - I(mk, p));
                            const double reB = 0.5 * (I(k, p) + I(mk, p));
                            const double imB = 0.5 * (R(mk, p) - R(k, p));
                            va = 0.5 * (cc * reA + ss * imA);
                            vb = 0.5 * (cc * reB + ss * imB);
                            break;
                        }
                    }
                    store(m, p, va, vb);
                }
            }
        } else {
            const double inv = 1.0 / n;
            for (int j = 0; j < K; ++j) {
                const double flip = (kind == TKind::dst2 && (j & 1)) ? -1.0 : 1.0;
                for (int p = 0; p < pw; ++p)
                    store(j, p, flip * inv * R(j, p), flip * inv * I(j, p));
            }
        }
    }
}

void YTransform::forward_raw(const double* in, int W, double* out) const {
    if (fft) {
        fft_pass(false, in, W, out);
    } else {
        dense_apply(dense_F, in, W, out);
    }
}

void YTransform::apply_S(const double* coef, int W, double* out) const {
    if (fft) {
        fft_pass(true, coef, W, out);
    } else {
        dense_apply(dense_S, coef, W, out);
    }
}

// ---------------------------------------------------------------------------
// x-direction operators as weighted symmetric tridiagonals (W * A_x).
// ---------------------------------------------------------------------------

struct XOp {
    std::vector<double> w;     // row weights
    std::vector<double> diag;  // of W*A_x
    std::vector<double> off;   // off[i] couples i and i+1
};

XOp xop_u(const StaggeredGrid& g) {
    const int X = g.N - 1;
    XOp op{std::vector<double>(X), std::vector<double>(X), std::vector<double>(X - 1)};
    for (int c = 0; c < X; ++c) {
        op.w[c] = g.dxu[c];
        op.diag[c] = 1.0 / g.ell[c] + 1.0 / g.ell[c + 1];
        if (c + 1 < X) op.off[c] = -1.0 / g.ell[c + 1];
    }
    return op;
}

XOp xop_vtheta(const StaggeredGrid& g) {
    const int X = g.N;
    XOp op{std::vector<double>(X), std::vector<double>(X), std::vector<double>(X - 1)};
    for (int c = 0; c < X; ++c) {
        const double dW = (c == 0) ? 0.5 * g.ell[0] : g.dxu[c - 1];
        const double dE = (c == X - 1) ? 0.5 * g.ell[X - 1] : g.dxu[c];
        op.w[c] = g.ell[c];
        op.diag[c] = 1.0 / dW + 1.0 / dE;
        if (c + 1 < X) op.off[c] = -1.0 / g.dxu[c];
    }
    return op;
}

XOp xop_pressure(const StaggeredGrid& g) {
    const int X = g.N;
    XOp op{std::vector<double>(X), std::vector<double>(X), std::vector<double>(X - 1)};
    for (int c = 0; c < X; ++c) {
        op.w[c] = g.ell[c];
        double d = 0.0;
        if (c > 0) d += 1.0 / g.dxu[c - 1];
        if (c < X - 1) d += 1.0 / g.dxu[c];
        op.diag[c] = d;
        if (c + 1 < X) op.off[c] = -1.0 / g.dxu[c];
    }
    return op;
}

XOp xop_corner(const StaggeredGrid& g) {
    return xop_u(g);  // same spacings: corners sit at interior cell edges
}

} // namespace

// ---------------------------------------------------------------------------

HelmholtzShift HelmholtzShift::velocity(double dt, double Ra, double Pr) {
    return {0.5 * dt * std::sqrt(Pr / Ra)};
}

HelmholtzShift HelmholtzShift::temperature(double dt, double Ra, double Pr) {
    return {0.5 * dt / std::sqrt(Ra * Pr)};
}

struct SolverPlan::Impl {
    const StaggeredGrid* grid = nullptr;
    Family field_family = Family::pressure;
    YTransform yt;
    XOp xop;
    bool pure_op = false;
    double c = 0.0;
    int X = 0;
    std::vector<double> fac_d, fac_l;  // K * X packed factors
    bool null_mode = false;

    void factorize() {
        const int K = yt.K;
        fac_d.assign(std::size_t(K) * X, 0.0);
        fac_l.assign(std::size_t(K) * std::max(X - 1, 0), 0.0);
        double scale = 0.0;
        for (int i = 0; i < X; ++i) scale = std::max(scale, std::abs(xop.diag[i]));
        for (int m = 0; m < K; ++m) {
            const double lam = yt.lambda[m];
            double* d = fac_d.data() + std::size_t(m) * X;
            double* l = fac_l.data() + std::size_t(m) * (X - 1);
            auto a = [&](int i) {
                return pure_op ? (xop.w[i] * lam + xop.diag[i])
                               : (xop.w[i] * (1.0 + c * lam) + c * xop.diag[i]);
            };
            auto b = [&](int i) { return pure_op ? xop.off[i] : c * xop.off[i]; };
            d[0] = a(0);
            for (int i = 1; i < X; ++i) {
                l[i - 1] = b(i - 1) / d[i - 1];
                d[i] = a(i) - l[i - 1] * b(i - 1);
            }
            for (int i = 0; i < X; ++i) {
                const bool admissible_zero =
                    pure_op && field_family == Family::pressure && m == 0 && i == X - 1;
                if (admissible_zero && std::abs(d[i]) <= 1e-10 * scale) {
                    null_mode = true;
                    d[i] = 1.0;  // placeholder, solve pins this component to zero
                } else if (!pure_op && !(d[i] > 0.0)) {
                    throw SolverFailure("nonpositive pivot in Helmholtz mode " +
                                        std::to_string(m));
                } else if (d[i] == 0.0) {
                    throw SolverFailure("singular pivot in mode " + std::to_string(m));
                }
            }
        }
    }

    void tri_solve_all(double* modes, int W) const {
        const int K = yt.K;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (std::size_t(K) * W > 16384)
#endif
        for (int m = 0; m < K; ++m) {
            double* row = modes + std::size_t(m) * W;
            const double* d = fac_d.data() + std::size_t(m) * X;
            const double* l = fac_l.data() + std::size_t(m) * (X - 1);
            const double invDm = 1.0 / yt.dnorm[m];
            for (int i = 0; i < X; ++i) row[i] *= xop.w[i] * invDm;
            for (int i = 1; i < X; ++i) row[i] -= l[i - 1] * row[i - 1];
            const bool pin_last = null_mode && m == 0;
            for (int i = 0; i < X; ++i) row[i] /= d[i];
            if (pin_last) row[X - 1] = 0.0;
            for (int i = X - 2; i >= 0; --i) row[i] -= l[i] * row[i + 1];
        }
    }
};

SolverPlan::SolverPlan() : impl_(new Impl) {}
SolverPlan::~SolverPlan() = default;
SolverPlan::SolverPlan(SolverPlan&&) noexcept = default;
SolverPlan& SolverPlan::operator=(SolverPlan&&) noexcept = default;

SolverPlan SolverPlan::helmholtz(const StaggeredGrid& g, Family family, HelmholtzShift shift) {
    if (!(shift.c >= 0.0)) throw InvalidSpec("Helmholtz coefficient must be >= 0");
    SolverPlan p;
    Impl& im = *p.impl_;
    im.grid = &g;
    im.field_family = family;
    im.c = shift.c;
    switch (family) {
        case Family::u:
            im.yt.init(TKind::dst2, g.M, g.h);
            im.xop = xop_u(g);
            break;
        case Family::v:
            im.yt.init(TKind::dst1, g.M, g.h);
            im.xop = xop_vtheta(g);
            break;
        case Family::theta_walls:
            im.yt.init(TKind::dct1, g.M, g.h);
            im.xop = xop_vtheta(g);
            break;
        default:
            throw ShapeMismatch("helmholtz plan supports u, v and theta_walls families");
    }
    im.X = int(im.xop.w.size());
    im.factorize();
    return p;
}

SolverPlan SolverPlan::pressure(const StaggeredGrid& g) {
    SolverPlan p;
    Impl& im = *p.impl_;
    im.grid = &g;
    im.field_family = Family::pressure;
    im.pure_op = true;
    im.yt.init(TKind::dct2, g.M, g.h);
    im.xop = xop_pressure(g);
    im.X = int(im.xop.w.size());
    im.factorize();
    if (!im.null_mode) throw SolverFailure("pressure plan lost its null mode");
    return p;
}

SolverPlan SolverPlan::poisson_corner(const StaggeredGrid& g) {
    SolverPlan p;
    Impl& im = *p.impl_;
    im.grid = &g;
    im.field_family = Family::corner_in;
    im.pure_op = true;
    im.yt.init(TKind::dst1, g.M, g.h);
    im.xop = xop_corner(g);
    im.X = int(im.xop.w.size());
    im.factorize();
    return p;
}

const std::vector<double>& SolverPlan::eigenvalues() const { return impl_->yt.lambda; }
Family SolverPlan::family() const { return impl_->field_family; }
bool SolverPlan::has_null_mode() const { return impl_->null_mode; }
bool SolverPlan::uses_fft() const { return impl_->yt.fft; }

ScalarField SolverPlan::forward(const ScalarField& f) const {
    require_family(f, impl_->field_family, "plan forward");
    ScalarField out(f.family(), *impl_->grid);
    impl_->yt.forward_raw(f.data(), f.cols(), out.data());
    const int W = f.cols();
    for (int m = 0; m < impl_->yt.K; ++m) {
        const double inv = 1.0 / impl_->yt.dnorm[m];
        double* row = out.data() + std::size_t(m) * W;
        for (int w = 0; w < W; ++w) row[w] *= inv;
    }
    return out;
}

ScalarField SolverPlan::inverse(const ScalarField& coef) const {
    require_family(coef, impl_->field_family, "plan inverse");
    ScalarField out(coef.family(), *impl_->grid);
    impl_->yt.apply_S(coef.data(), coef.cols(), out.data());
    return out;
}

ScalarField SolverPlan::solve(const ScalarField& rhs) const {
    require_family(rhs, impl_->field_family, "plan solve");
    if (&rhs.grid() != impl_->grid) throw ShapeMismatch("solve: field from another grid");
    const int W = rhs.cols();
    ScalarField modes(rhs.family(), *impl_->grid);
    impl_->yt.forward_raw(rhs.data(), W, modes.data());
    impl_->tri_solve_all(modes.data(), W);
    ScalarField out(rhs.family(), *impl_->grid);
    impl_->yt.apply_S(modes.data(), W, out.data());
    return out;
}

ScalarField solve_helmholtz(const SolverPlan& plan, const ScalarField& rhs) {
    return plan.solve(rhs);
}

ScalarField solve_pressure(const SolverPlan& plan, const ScalarField& rhs,
                           double noise_floor) {
    require_family(rhs, Family::pressure, "solve_pressure");
    const StaggeredGrid& g = rhs.grid();

    double wsum = 0.0, mean = 0.0;
    for (int r = 0; r < rhs.rows(); ++r)
        for (int c = 0; c < rhs.cols(); ++c) {
            const double a = g.ell[c] * g.h;
            wsum += a;
            mean += a * rhs(r, c);
        }
    mean /= wsum;
    const double scale = rhs.max_abs();
    if (scale > noise_floor && std::abs(mean) > 1e-6 * scale) {
        char msg[96];
        std::snprintf(msg, sizeof(msg), "pressure rhs mean %.3e vs magnitude %.3e", mean,
                      scale);
        throw IncompatibleRHS(msg);
    }

    ScalarField compat = rhs;
    for (int r = 0; r < compat.rows(); ++r)
        for (int c = 0; c < compat.cols(); ++c) compat(r, c) -= mean;

    ScalarField phi = plan.solve(compat);

    double pmean = 0.0;
    for (int r = 0; r < phi.rows(); ++r)
        for (int c = 0; c < phi.cols(); ++c) pmean += g.ell[c] * g.h * phi(r, c);
    pmean /= wsum;
    for (int r = 0; r < phi.rows(); ++r)
        for (int c = 0; c < phi.cols(); ++c) phi(r, c) -= pmean;
    return phi;
}

} // namespace bouss
