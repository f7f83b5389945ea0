#include "bouss/operators.hpp"

#include <cmath>
#include <string>

namespace bouss {

void SpongeParams::validate() const {
    if (gamma != 0 && gamma != 1) throw InvalidSpec("sponge gamma must be 0 or 1");
    if (!(sigma > 0.0 && sigma < 1.0)) throw InvalidSpec("sponge sigma must be in (0,1)");
    if (!(p >= 1.0)) throw InvalidSpec("sponge exponent p must be >= 1");
}

double ground_theta(double x, double zeta) {
    if (!(zeta > 0.0)) throw InvalidSpec("zeta must be > 0");
    // logistic form of (1 - tanh((2|x|-1)/(2 zeta)))/2; keeps the far-field
    // tail representable instead of rounding to zero
    return 1.0 / (1.0 + std::exp((2.0 * std::abs(x) - 1.0) / zeta));
}

std::vector<double> sponge_profile(const StaggeredGrid& grid, const SpongeParams& params) {
    params.validate();
    std::vector<double> psi(grid.N);
    for (int c = 0; c < grid.N; ++c) {
        const double arg = 2.0 * std::abs(grid.x_half[c]) / (params.sigma * grid.L);
        psi[c] = std::exp(-double(params.gamma) * std::pow(arg, params.p));
    }
    return psi;
}

ScalarField laplacian_u(const ScalarField& u) {
    require_family(u, Family::u, "laplacian_u");
    const StaggeredGrid& g = u.grid();
    const int R = u.rows(), C = u.cols();
    const double ih2 = 1.0 / (g.h * g.h);
    ScalarField out(Family::u, g);
    for (int r = 0; r < R; ++r) {
        for (int c = 0; c < C; ++c) {
            const double uW = (c > 0) ? u(r, c - 1) : 0.0;
            const double uE = (c < C - 1) ? u(r, c + 1) : 0.0;
            const double xpart =
                ((u(r, c) - uW) / g.ell[c] + (u(r, c) - uE) / g.ell[c + 1]) / g.dxu[c];
            // ghost reflection at the horizontal walls
            const double uS = (r > 0) ? u(r - 1, c) : -u(0, c);
            const double uN = (r < R - 1) ? u(r + 1, c) : -u(R - 1, c);
            out(r, c) = xpart + (2.0 * u(r, c) - uS - uN) * ih2;
        }
    }
    return out;
}

namespace {

// x-direction distances for the v/theta family: first and last cells reach
// only half a width to the Dirichlet wall node.
inline double dist_west(const StaggeredGrid& g, int c) {
    return (c == 0) ? 0.5 * g.ell[0] : g.dxu[c - 1];
}
inline double dist_east(const StaggeredGrid& g, int c) {
    return (c == g.N - 1) ? 0.5 * g.ell[g.N - 1] : g.dxu[c];
}

} // namespace

ScalarField laplacian_vtheta(const ScalarField& f, const ThetaBC* bc) {
    const StaggeredGrid& g = f.grid();
    const bool walls = f.family() == Family::theta_walls;
    if (!walls) require_family(f, Family::v, "laplacian_vtheta");
    if (walls && (!bc || bc->ywalls != ThetaBC::YWalls::neumann))
        throw ShapeMismatch("theta_walls field requires a Neumann-y boundary spec");

    const int R = f.rows(), C = f.cols();
    const double ih2 = 1.0 / (g.h * g.h);
    ScalarField out(f.family(), g);
    for (int r = 0; r < R; ++r) {
        const double left = bc ? bc->left[r] : 0.0;
        const double right = bc ? bc->right[r] : 0.0;
        for (int c = 0; c < C; ++c) {
            const double fW = (c > 0) ? f(r, c - 1) : left;
            const double fE = (c < C - 1) ? f(r, c + 1) : right;
            const double xpart =
                ((f(r, c) - fW) / dist_west(g, c) + (f(r, c) - fE) / dist_east(g, c)) /
                g.ell[c];
            double ypart;
            if (!walls) {
                const double fS = (r > 0) ? f(r - 1, c) : (bc ? bc->bottom[c] : 0.0);
                const double fN = (r < R - 1) ? f(r + 1, c) : (bc ? bc->top[c] : 0.0);
                ypart = (2.0 * f(r, c) - fS - fN) * ih2;
            } else if (r == 0) {
                ypart = 2.0 * (f(0, c) - f(1, c)) * ih2;
            } else if (r == R - 1) {
                ypart = 2.0 * (f(R - 1, c) - f(R - 2, c)) * ih2;
            } else {
                ypart = (2.0 * f(r, c) - f(r - 1, c) - f(r + 1, c)) * ih2;
            }
            out(r, c) = xpart + ypart;
        }
    }
    return out;
}

ScalarField theta_boundary_load(const StaggeredGrid& grid, const ThetaBC& bc) {
    ScalarField zero(bc.theta_family(), grid);
    return laplacian_vtheta(zero, &bc);
}

std::pair<ScalarField, ScalarField> gradient(const ScalarField& P) {
    require_family(P, Family::pressure, "gradient");
    const StaggeredGrid& g = P.grid();
    ScalarField gu(Family::u, g), gv(Family::v, g);
    for (int r = 0; r < gu.rows(); ++r)
        for (int c = 0; c < gu.cols(); ++c)
            gu(r, c) = (P(r, c + 1) - P(r, c)) / g.dxu[c];
    const double ih = 1.0 / g.h;
    for (int r = 0; r < gv.rows(); ++r)
        for (int c = 0; c < gv.cols(); ++c) gv(r, c) = (P(r + 1, c) - P(r, c)) * ih;
    return {std::move(gu), std::move(gv)};
}

ScalarField divergence(const ScalarField& u, const ScalarField& v) {
    require_family(u, Family::u, "divergence");
    require_family(v, Family::v, "divergence");
    require_same_grid(u, v, "divergence");
    const StaggeredGrid& g = u.grid();
    ScalarField d(Family::pressure, g);
    const double ih = 1.0 / g.h;
    for (int r = 0; r < d.rows(); ++r) {
        for (int c = 0; c < d.cols(); ++c) {
            const double uW = (c > 0) ? u(r, c - 1) : 0.0;
            const double uE = (c < g.N - 1) ? u(r, c) : 0.0;
            const double vS = (r > 0) ? v(r - 1, c) : 0.0;
            const double vN = (r < g.M - 1) ? v(r, c) : 0.0;
            d(r, c) = (uE - uW) / g.ell[c] + (vN - vS) * ih;
        }
    }
    return d;
}

namespace {

// u and the width-weighted v interpolated to the interior cell corner
// (x[c+1], y[r+1]); r in 0..M-2, c in 0..N-2.
struct CornerInterp {
    const ScalarField& u;
    const ScalarField& v;
    const StaggeredGrid& g;
    double ucorner(int r, int c) const { return 0.5 * (u(r, c) + u(r + 1, c)); }
    double vcorner(int r, int c) const {
        return (g.ell[c + 1] * v(r, c) + g.ell[c] * v(r, c + 1)) /
               (g.ell[c] + g.ell[c + 1]);
    }
    double uv(int r, int c) const { return ucorner(r, c) * vcorner(r, c); }
};

} // namespace

std::pair<ScalarField, ScalarField> nonlinear_momentum(const ScalarField& u,
                                                       const ScalarField& v) {
    require_family(u, Family::u, "nonlinear_momentum");
    require_family(v, Family::v, "nonlinear_momentum");
    require_same_grid(u, v, "nonlinear_momentum");
    const StaggeredGrid& g = u.grid();
    const int N = g.N, M = g.M;
    const double ih = 1.0 / g.h;
    const CornerInterp corner{u, v, g};

    ScalarField n1(Family::u, g);
    for (int r = 0; r < M; ++r) {
        for (int c = 0; c < N - 1; ++c) {
            const double uW = (c > 0) ? u(r, c - 1) : 0.0;
            const double uE = (c < N - 2) ? u(r, c + 1) : 0.0;
            const double sqE = 0.5 * (u(r, c) * u(r, c) + uE * uE);
            const double sqW = 0.5 * (uW * uW + u(r, c) * u(r, c));
            const double uvN = (r < M - 1) ? corner.uv(r, c) : 0.0;
            const double uvS = (r > 0) ? corner.uv(r - 1, c) : 0.0;
            n1(r, c) = (sqE - sqW) / g.dxu[c] + (uvN - uvS) * ih;
        }
    }

    ScalarField n2(Family::v, g);
    for (int r = 0; r < M - 1; ++r) {
        for (int c = 0; c < N; ++c) {
            const double vS = (r > 0) ? v(r - 1, c) : 0.0;
            const double vN = (r < M - 2) ? v(r + 1, c) : 0.0;
            const double sqN = 0.5 * (v(r, c) * v(r, c) + vN * vN);
            const double sqS = 0.5 * (vS * vS + v(r, c) * v(r, c));
            const double uvE = (c < N - 1) ? corner.uv(r, c) : 0.0;
            const double uvW = (c > 0) ? corner.uv(r, c - 1) : 0.0;
            n2(r, c) = (uvE - uvW) / g.ell[c] + (sqN - sqS) * ih;
        }
    }
    return {std::move(n1), std::move(n2)};
}

ScalarField nonlinear_theta(const ScalarField& u, const ScalarField& v,
                            const ScalarField& theta, const ThetaBC& bc) {
    require_family(u, Family::u, "nonlinear_theta");
    require_family(v, Family::v, "nonlinear_theta");
    require_same_grid(u, theta, "nonlinear_theta");
    if (theta.family() != bc.theta_family())
        throw ShapeMismatch("nonlinear_theta: theta family does not match boundary spec");

    const StaggeredGrid& g = u.grid();
    const int N = g.N, M = g.M;
    const double ih = 1.0 / g.h;
    ScalarField out(theta.family(), g);

    // theta interpolated to the face at x[c+1] within a given theta row
    auto theta_xface = [&](int row, int c) {
        return (g.ell[c + 1] * theta(row, c) + g.ell[c] * theta(row, c + 1)) /
               (g.ell[c] + g.ell[c + 1]);
    };

    if (theta.family() == Family::v) {
        for (int r = 0; r < M - 1; ++r) {
            for (int c = 0; c < N; ++c) {
                const double ufE = (c < N - 1) ? 0.5 * (u(r, c) + u(r + 1, c)) : 0.0;
                const double ufW = (c > 0) ? 0.5 * (u(r, c - 1) + u(r + 1, c - 1)) : 0.0;
                const double fE = (c < N - 1) ? ufE * theta_xface(r, c) : 0.0;
                const double fW = (c > 0) ? ufW * theta_xface(r, c - 1) : 0.0;

                const double vS = (r > 0) ? v(r - 1, c) : 0.0;
                const double vN = (r < M - 2) ? v(r + 1, c) : 0.0;
                const double thS = (r > 0) ? theta(r - 1, c) : bc.bottom[c];
                const double thN = (r < M - 2) ? theta(r + 1, c) : bc.top[c];
                const double fN = 0.5 * (v(r, c) + vN) * 0.5 * (theta(r, c) + thN);
                const double fS = 0.5 * (vS + v(r, c)) * 0.5 * (thS + theta(r, c));
                out(r, c) = (fE - fW) / g.ell[c] + (fN - fS) * ih;
            }
        }
        return out;
    }

    // Cavity variant: wall rows are half cells with exact zero flux through
    // the wall face; u on the short side faces averages linearly to the wall.
    for (int r = 0; r <= M; ++r) {
        const bool bottom = (r == 0), top = (r == M);
        for (int c = 0; c < N; ++c) {
            double ufE = 0.0, ufW = 0.0;
            if (bottom) {
                ufE = 0.5 * u(0, c);
                ufW = (c > 0) ? 0.5 * u(0, c - 1) : 0.0;
            } else if (top) {
                ufE = 0.5 * u(M - 1, c);
                ufW = (c > 0) ? 0.5 * u(M - 1, c - 1) : 0.0;
            } else {
                ufE = 0.5 * (u(r - 1, c) + u(r, c));
                ufW = (c > 0) ? 0.5 * (u(r - 1, c - 1) + u(r, c - 1)) : 0.0;
            }
            const double fE = (c < N - 1) ? ufE * theta_xface(r, c) : 0.0;
            const double fW = (c > 0) ? ufW * theta_xface(r, c - 1) : 0.0;

            // v at the cell edges y[r-?]: rows of v sit at y[1..M-1]
            auto v_at = [&](int j) { return (j >= 1 && j <= M - 1) ? v(j - 1, c) : 0.0; };
            double ypart;
            if (bottom) {
                const double fN = 0.5 * (v_at(0) + v_at(1)) * 0.5 * (theta(0, c) + theta(1, c));
                ypart = 2.0 * fN * ih;
            } else if (top) {
                const double fS =
                    0.5 * (v_at(M - 1) + v_at(M)) * 0.5 * (theta(M - 1, c) + theta(M, c));
                ypart = -2.0 * fS * ih;
            } else {
                const double fN =
                    0.5 * (v_at(r) + v_at(r + 1)) * 0.5 * (theta(r, c) + theta(r + 1, c));
                const double fS =
                    0.5 * (v_at(r - 1) + v_at(r)) * 0.5 * (theta(r - 1, c) + theta(r, c));
                ypart = (fN - fS) * ih;
            }
            out(r, c) = (fE - fW) / g.ell[c] + ypart;
        }
    }
    return out;
}

} // namespace bouss
