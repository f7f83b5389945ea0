#include "dense_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bouss::test {

std::vector<double> matvec(const Dense& A, const std::vector<double>& x) {
    std::vector<double> y(A.rows, 0.0);
    for (int r = 0; r < A.rows; ++r)
        for (int c = 0; c < A.cols; ++c) y[r] += A(r, c) * x[c];
    return y;
}

Dense matmul(const Dense& A, const Dense& B) {
    Dense C(A.rows, B.cols);
    for (int r = 0; r < A.rows; ++r)
        for (int k = 0; k < A.cols; ++k) {
            const double a = A(r, k);
            if (a == 0.0) continue;
            for (int c = 0; c < B.cols; ++c) C(r, c) += a * B(k, c);
        }
    return C;
}

std::vector<double> lu_solve(Dense A, std::vector<double> b) {
    const int n = A.rows;
    std::vector<int> piv(n);
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int k = 0; k < n; ++k) {
        int best = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > std::abs(A(best, k))) best = i;
        if (A(best, k) == 0.0) throw std::runtime_error("lu_solve: singular matrix");
        if (best != k) {
            for (int c = 0; c < n; ++c) std::swap(A(k, c), A(best, c));
            std::swap(b[k], b[best]);
        }
        for (int i = k + 1; i < n; ++i) {
            const double f = A(i, k) / A(k, k);
            A(i, k) = f;
            for (int c = k + 1; c < n; ++c) A(i, c) -= f * A(k, c);
            b[i] -= f * b[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int c = i + 1; c < n; ++c) b[i] -= A(i, c) * b[c];
        b[i] /= A(i, i);
    }
    return b;
}

void jacobi_eig(Dense A, std::vector<double>& w, Dense& V) {
    const int n = A.rows;
    V = Dense(n, n);
    for (int i = 0; i < n; ++i) V(i, i) = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (off < 1e-26 * n * n) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (A(p, q) == 0.0) continue;
                const double theta = 0.5 * (A(q, q) - A(p, p)) / A(p, q);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = A(i, p), aiq = A(i, q);
                    A(i, p) = c * aip - s * aiq;
                    A(i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    const double api = A(p, i), aqi = A(q, i);
                    A(p, i) = c * api - s * aqi;
                    A(q, i) = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = V(i, p), viq = V(i, q);
                    V(i, p) = c * vip - s * viq;
                    V(i, q) = s * vip + c * viq;
                }
            }
        }
    }
    w.resize(n);
    for (int i = 0; i < n; ++i) w[i] = A(i, i);
}

std::vector<double> weighted_pinv_solve(const Dense& A, const std::vector<double>& wgt,
                                        const std::vector<double>& b) {
    const int n = A.rows;
    // symmetrize: B = W^(1/2) A W^(-1/2)
    Dense B(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            B(r, c) = std::sqrt(wgt[r]) * A(r, c) / std::sqrt(wgt[c]);
    std::vector<double> w;
    Dense V;
    jacobi_eig(B, w, V);
    double wmax = 0.0;
    for (double x : w) wmax = std::max(wmax, std::abs(x));
    std::vector<double> bs(n);
    for (int i = 0; i < n; ++i) bs[i] = std::sqrt(wgt[i]) * b[i];
    std::vector<double> y(n, 0.0);
    for (int m = 0; m < n; ++m) {
        if (std::abs(w[m]) < 1e-12 * wmax) continue;
        double proj = 0.0;
        for (int i = 0; i < n; ++i) proj += V(i, m) * bs[i];
        proj /= w[m];
        for (int i = 0; i < n; ++i) y[i] += proj * V(i, m);
    }
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = y[i] / std::sqrt(wgt[i]);
    double wsum = 0.0, mean = 0.0;
    for (int i = 0; i < n; ++i) {
        wsum += wgt[i];
        mean += wgt[i] * x[i];
    }
    mean /= wsum;
    for (double& xi : x) xi -= mean;
    return x;
}

std::vector<double> flatten(const ScalarField& f) {
    return {f.data(), f.data() + f.size()};
}

void unflatten(ScalarField& f, const std::vector<double>& v) {
    std::copy(v.begin(), v.end(), f.data());
}

// ---------------------------------------------------------------------------
// literal stencil assemblies; logical indices follow the staggered layout
// ---------------------------------------------------------------------------

Dense dense_laplacian_u(const StaggeredGrid& g) {
    const int N = g.N, M = g.M;
    const int nu = (N - 1) * M;
    auto id = [&](int r, int c) { return r * (N - 1) + c; };
    Dense A(nu, nu);
    for (int r = 0; r < M; ++r) {
        for (int c = 0; c < N - 1; ++c) {
            const int me = id(r, c);
            const double area = g.dxu[c] * g.h;
            // west/east fluxes across x_half faces
            A(me, me) += g.h / g.ell[c] / area;
            if (c > 0) A(me, id(r, c - 1)) -= g.h / g.ell[c] / area;
            A(me, me) += g.h / g.ell[c + 1] / area;
            if (c < N - 2) A(me, id(r, c + 1)) -= g.h / g.ell[c + 1] / area;
            // south/north fluxes; ghost reflection doubles the wall link
            if (r > 0) {
                A(me, me) += g.dxu[c] / g.h / area;
                A(me, id(r - 1, c)) -= g.dxu[c] / g.h / area;
            } else {
                A(me, me) += 2.0 * g.dxu[c] / g.h / area;
            }
            if (r < M - 1) {
                A(me, me) += g.dxu[c] / g.h / area;
                A(me, id(r + 1, c)) -= g.dxu[c] / g.h / area;
            } else {
                A(me, me) += 2.0 * g.dxu[c] / g.h / area;
            }
        }
    }
    return A;
}

Dense dense_laplacian_vtheta(const StaggeredGrid& g, bool neumann_y) {
    const int N = g.N, M = g.M;
    const int R = neumann_y ? M + 1 : M - 1;
    auto id = [&](int r, int c) { return r * N + c; };
    Dense A(R * N, R * N);
    for (int r = 0; r < R; ++r) {
        for (int c = 0; c < N; ++c) {
            const int me = id(r, c);
            const bool half = neumann_y && (r == 0 || r == R - 1);
            const double area = g.ell[c] * (half ? 0.5 * g.h : g.h);
            const double face_y = half ? 0.5 * g.h : g.h;
            const double dW = (c == 0) ? 0.5 * g.ell[0] : g.dxu[c - 1];
            const double dE = (c == N - 1) ? 0.5 * g.ell[N - 1] : g.dxu[c];
            A(me, me) += face_y / dW / area;
            if (c > 0) A(me, id(r, c - 1)) -= face_y / dW / area;
            A(me, me) += face_y / dE / area;
            if (c < N - 1) A(me, id(r, c + 1)) -= face_y / dE / area;
            if (!neumann_y) {
                // Dirichlet node rows above and below
                A(me, me) += 2.0 * g.ell[c] / g.h / area;
                if (r > 0) A(me, id(r - 1, c)) -= g.ell[c] / g.h / area;
                if (r < R - 1) A(me, id(r + 1, c)) -= g.ell[c] / g.h / area;
            } else {
                if (r > 0) {
                    A(me, me) += g.ell[c] / g.h / area;
                    A(me, id(r - 1, c)) -= g.ell[c] / g.h / area;
                }
                if (r < R - 1) {
                    A(me, me) += g.ell[c] / g.h / area;
                    A(me, id(r + 1, c)) -= g.ell[c] / g.h / area;
                }
            }
        }
    }
    return A;
}

std::vector<double> dense_theta_load(const StaggeredGrid& g, const ThetaBC& bc) {
    const int N = g.N, M = g.M;
    const bool neumann = bc.ywalls == ThetaBC::YWalls::neumann;
    const int R = neumann ? M + 1 : M - 1;
    std::vector<double> load(std::size_t(R) * N, 0.0);
    for (int r = 0; r < R; ++r) {
        for (int c = 0; c < N; ++c) {
            const bool half = neumann && (r == 0 || r == R - 1);
            const double area = g.ell[c] * (half ? 0.5 * g.h : g.h);
            const double face_y = half ? 0.5 * g.h : g.h;
            double v = 0.0;
            if (c == 0) v += face_y / (0.5 * g.ell[0]) * (-bc.left[r]);
            if (c == N - 1) v += face_y / (0.5 * g.ell[N - 1]) * (-bc.right[r]);
            if (!neumann) {
                if (r == 0) v += g.ell[c] / g.h * (-bc.bottom[c]);
                if (r == R - 1) v += g.ell[c] / g.h * (-bc.top[c]);
            }
            load[std::size_t(r) * N + c] = v / area;
        }
    }
    return load;
}

Dense dense_grad_x(const StaggeredGrid& g) {
    const int N = g.N, M = g.M;
    Dense G((N - 1) * M, N * M);
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < N - 1; ++c) {
            G(r * (N - 1) + c, r * N + c + 1) = 1.0 / g.dxu[c];
            G(r * (N - 1) + c, r * N + c) = -1.0 / g.dxu[c];
        }
    return G;
}

Dense dense_grad_y(const StaggeredGrid& g) {
    const int N = g.N, M = g.M;
    Dense G(N * (M - 1), N * M);
    for (int r = 0; r < M - 1; ++r)
        for (int c = 0; c < N; ++c) {
            G(r * N + c, (r + 1) * N + c) = 1.0 / g.h;
            G(r * N + c, r * N + c) = -1.0 / g.h;
        }
    return G;
}

Dense dense_div_u(const StaggeredGrid& g) {
    const int N = g.N, M = g.M;
    Dense D(N * M, (N - 1) * M);
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < N; ++c) {
            if (c < N - 1) D(r * N + c, r * (N - 1) + c) = 1.0 / g.ell[c];
            if (c > 0) D(r * N + c, r * (N - 1) + c - 1) = -1.0 / g.ell[c];
        }
    return D;
}

Dense dense_div_v(const StaggeredGrid& g) {
    const int N = g.N, M = g.M;
    Dense D(N * M, N * (M - 1));
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < N; ++c) {
            if (r < M - 1) D(r * N + c, r * N + c) = 1.0 / g.h;
            if (r > 0) D(r * N + c, (r - 1) * N + c) = -1.0 / g.h;
        }
    return D;
}

Dense dense_pressure_op(const StaggeredGrid& g) {
    const Dense DG1 = matmul(dense_div_u(g), dense_grad_x(g));
    const Dense DG2 = matmul(dense_div_v(g), dense_grad_y(g));
    Dense A(DG1.rows, DG1.cols);
    for (int r = 0; r < A.rows; ++r)
        for (int c = 0; c < A.cols; ++c) A(r, c) = -(DG1(r, c) + DG2(r, c));
    return A;
}

Dense dense_corner_laplacian(const StaggeredGrid& g) {
    const int N = g.N, M = g.M;
    auto id = [&](int r, int c) { return r * (N - 1) + c; };
    Dense A((N - 1) * (M - 1), (N - 1) * (M - 1));
    for (int r = 0; r < M - 1; ++r) {
        for (int c = 0; c < N - 1; ++c) {
            const int me = id(r, c);
            const double area = g.dxu[c] * g.h;
            A(me, me) += g.h / g.ell[c] / area;
            if (c > 0) A(me, id(r, c - 1)) -= g.h / g.ell[c] / area;
            A(me, me) += g.h / g.ell[c + 1] / area;
            if (c < N - 2) A(me, id(r, c + 1)) -= g.h / g.ell[c + 1] / area;
            A(me, me) += 2.0 * g.dxu[c] / g.h / area;
            if (r > 0) A(me, id(r - 1, c)) -= g.dxu[c] / g.h / area;
            if (r < M - 2) A(me, id(r + 1, c)) -= g.dxu[c] / g.h / area;
        }
    }
    return A;
}

Dense dense_yop_u(const StaggeredGrid& g) {
    const int M = g.M;
    Dense A(M, M);
    const double ih2 = 1.0 / (g.h * g.h);
    for (int j = 0; j < M; ++j) {
        A(j, j) = 2.0 * ih2;
        if (j > 0) A(j, j - 1) = -ih2;
        else A(j, j) += ih2; // ghost row reflection
        if (j < M - 1) A(j, j + 1) = -ih2;
        else A(j, j) += ih2;
    }
    return A;
}

Dense dense_yop_v(const StaggeredGrid& g) {
    const int K = g.M - 1;
    Dense A(K, K);
    const double ih2 = 1.0 / (g.h * g.h);
    for (int j = 0; j < K; ++j) {
        A(j, j) = 2.0 * ih2;
        if (j > 0) A(j, j - 1) = -ih2;
        if (j < K - 1) A(j, j + 1) = -ih2;
    }
    return A;
}

Dense dense_yop_theta_walls(const StaggeredGrid& g) {
    const int K = g.M + 1;
    Dense A(K, K);
    const double ih2 = 1.0 / (g.h * g.h);
    for (int j = 0; j < K; ++j) {
        if (j == 0) {
            A(0, 0) = 2.0 * ih2;
            A(0, 1) = -2.0 * ih2;
        } else if (j == K - 1) {
            A(j, j) = 2.0 * ih2;
            A(j, j - 1) = -2.0 * ih2;
        } else {
            A(j, j) = 2.0 * ih2;
            A(j, j - 1) = -ih2;
            A(j, j + 1) = -ih2;
        }
    }
    return A;
}

Dense dense_yop_pressure(const StaggeredGrid& g) {
    const int M = g.M;
    Dense A(M, M);
    const double ih2 = 1.0 / (g.h * g.h);
    for (int j = 0; j < M; ++j) {
        if (j > 0) {
            A(j, j) += ih2;
            A(j, j - 1) = -ih2;
        }
        if (j < M - 1) {
            A(j, j) += ih2;
            A(j, j + 1) = -ih2;
        }
    }
    return A;
}

// ---------------------------------------------------------------------------
// convective-term oracles: every face evaluated explicitly
// ---------------------------------------------------------------------------

namespace {

struct Sampler {
    const ScalarField& u;
    const ScalarField& v;
    const StaggeredGrid& g;
    // values with walls filled in; logical i,j as in the cell definitions
    double uu(int i, int j) const { // u at (x[i], y_half[j-1]), i=0..N, j=1..M
        if (i <= 0 || i >= g.N) return 0.0;
        return u(j - 1, i - 1);
    }
    double vv(int i, int j) const { // v at (x_half[i-1], y[j]), i=1..N, j=0..M
        if (j <= 0 || j >= g.M) return 0.0;
        return v(j - 1, i - 1);
    }
};

} // namespace

std::pair<ScalarField, ScalarField> oracle_nonlinear_momentum(const ScalarField& u,
                                                              const ScalarField& v) {
    const StaggeredGrid& g = u.grid();
    const int N = g.N, M = g.M;
    const Sampler s{u, v, g};

    auto corner_u = [&](int i, int j) { // u at (x[i], y[j])
        if (j == 0 || j == M) return 0.0;
        return 0.5 * (s.uu(i, j) + s.uu(i, j + 1));
    };
    auto corner_v = [&](int i, int j) { // v at (x[i], y[j])
        if (i == 0 || i == N) return 0.0;
        return (g.ell[i] * s.vv(i, j) + g.ell[i - 1] * s.vv(i + 1, j)) /
               (g.ell[i - 1] + g.ell[i]);
    };

    ScalarField n1(Family::u, g), n2(Family::v, g);
    for (int j = 1; j <= M; ++j) {
        for (int i = 1; i <= N - 1; ++i) {
            const double east = 0.5 * (s.uu(i, j) * s.uu(i, j) + s.uu(i + 1, j) * s.uu(i + 1, j));
            const double west = 0.5 * (s.uu(i - 1, j) * s.uu(i - 1, j) + s.uu(i, j) * s.uu(i, j));
            const double north = corner_u(i, j) * corner_v(i, j);
            const double south = corner_u(i, j - 1) * corner_v(i, j - 1);
            const double area = g.dxu[i - 1] * g.h;
            n1(j - 1, i - 1) = (g.h * (east - west) + g.dxu[i - 1] * (north - south)) / area;
        }
    }
    for (int j = 1; j <= M - 1; ++j) {
        for (int i = 1; i <= N; ++i) {
            const double north = 0.5 * (s.vv(i, j) * s.vv(i, j) + s.vv(i, j + 1) * s.vv(i, j + 1));
            const double south = 0.5 * (s.vv(i, j - 1) * s.vv(i, j - 1) + s.vv(i, j) * s.vv(i, j));
            const double east = corner_u(i, j) * corner_v(i, j);
            const double west = corner_u(i - 1, j) * corner_v(i - 1, j);
            const double area = g.ell[i - 1] * g.h;
            n2(j - 1, i - 1) = (g.h * (east - west) + g.ell[i - 1] * (north - south)) / area;
        }
    }
    return {std::move(n1), std::move(n2)};
}

ScalarField oracle_nonlinear_theta(const ScalarField& u, const ScalarField& v,
                                   const ScalarField& theta, const ThetaBC& bc) {
    const StaggeredGrid& g = u.grid();
    const int N = g.N, M = g.M;
    const Sampler s{u, v, g};
    const bool walls = theta.family() == Family::theta_walls;

    auto th = [&](int i, int j) { // theta at (x_half[i-1], y[j])
        if (walls) return theta(j, i - 1);
        if (j == 0) return bc.bottom[i - 1];
        if (j == M) return bc.top[i - 1];
        return theta(j - 1, i - 1);
    };
    auto th_face_x = [&](int i, int j) { // theta at (x[i], y[j]) by width weights
        return (g.ell[i] * th(i, j) + g.ell[i - 1] * th(i + 1, j)) /
               (g.ell[i - 1] + g.ell[i]);
    };

    ScalarField out(theta.family(), g);
    const int j0 = walls ? 0 : 1;
    const int j1 = walls ? M : M - 1;
    for (int j = j0; j <= j1; ++j) {
        for (int i = 1; i <= N; ++i) {
            const bool bottom = walls && j == 0;
            const bool top = walls && j == M;
            const double hy = (bottom || top) ? 0.5 * g.h : g.h;
            double east = 0.0, west = 0.0;
            if (i < N) {
                double uf;
                if (bottom) uf = 0.5 * s.uu(i, 1);
                else if (top) uf = 0.5 * s.uu(i, M);
                else uf = 0.5 * (s.uu(i, j) + s.uu(i, j + 1));
                if (walls && !bottom && !top) uf = 0.5 * (s.uu(i, j) + s.uu(i, j + 1));
                east = uf * th_face_x(i, j);
            }
            if (i > 1) {
                double uf;
                if (bottom) uf = 0.5 * s.uu(i - 1, 1);
                else if (top) uf = 0.5 * s.uu(i - 1, M);
                else uf = 0.5 * (s.uu(i - 1, j) + s.uu(i - 1, j + 1));
                west = uf * th_face_x(i - 1, j);
            }
            double north = 0.0, south = 0.0;
            if (!top) north = 0.5 * (s.vv(i, j) + s.vv(i, j + 1)) * 0.5 * (th(i, j) + th(i, j + 1));
            if (!bottom) south = 0.5 * (s.vv(i, j - 1) + s.vv(i, j)) * 0.5 * (th(i, j - 1) + th(i, j));
            const double area = g.ell[i - 1] * hy;
            const int r = walls ? j : j - 1;
            out(r, i - 1) = (hy * (east - west) + g.ell[i - 1] * (north - south)) / area;
        }
    }
    return out;
}

void fill_random(ScalarField& f, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (std::size_t i = 0; i < f.size(); ++i) f.data()[i] = dist(rng);
}

std::vector<double> random_vector(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

StaggeredGrid make_test_grid(int N, int M, bool stretched, double L, double H) {
    GridSpec spec;
    spec.L = L;
    spec.H = H;
    spec.N = N;
    spec.M = M;
    if (stretched) {
        spec.gamma1 = 0.8 * L;
        spec.gamma2 = 3.0 / L;
        spec.uniform_x = false;
    } else {
        spec.uniform_x = true;
    }
    return build_grid(spec);
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

} // namespace bouss::test
