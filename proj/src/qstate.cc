#include "qnetlim/qstate.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnetlim {

namespace {

using cd = std::complex<double>;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Mat2 pauli(int k) {
    Mat2 m;
    switch (k) {
        case 0:
            m << 1, 0, 0, 1;
            break;
        case 1:
            m << 0, 1, 1, 0;
            break;
        case 2:
            m << 0, cd(0, -1), cd(0, 1), 0;
            break;
        default:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

Mat4 kron(const Mat2 &a, const Mat2 &b) {
    Mat4 r;
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++)
            for (int k = 0; k < 2; k++)
                for (int l = 0; l < 2; l++) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

void check_unit(double v, const char *name) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

const BellKind kOutcomeOrder[4] = {BellKind::PsiMinus, BellKind::PsiPlus, BellKind::PhiMinus, BellKind::PhiPlus};

// Pauli on the right-hand qubit that maps each Bell outcome back to Psi+.
// Found by checking which correction restores a perfect swap of two Psi+ pairs.
std::array<int, 4> swap_corrections();

// sigma_k(a c, a' c') = <beta_k|_{B1 B2} (rho1 (x) rho2) |beta_k>_{B1 B2}, unnormalized.
Mat4 project_inner(const Mat4 &r1, const Mat4 &r2, const Eigen::Vector4cd &beta) {
    Mat4 out = Mat4::Zero();
    for (int a = 0; a < 2; a++)
        for (int c = 0; c < 2; c++)
            for (int a2 = 0; a2 < 2; a2++)
                for (int c2 = 0; c2 < 2; c2++) {
                    cd acc = 0;
                    for (int b1 = 0; b1 < 2; b1++)
                        for (int b2 = 0; b2 < 2; b2++) {
                            cd left = std::conj(beta(2 * b1 + b2));
                            if (left == cd(0)) continue;
                            for (int b1p = 0; b1p < 2; b1p++)
                                for (int b2p = 0; b2p < 2; b2p++) {
                                    cd right = beta(2 * b1p + b2p);
                                    if (right == cd(0)) continue;
                                    acc += left * right * r1(2 * a + b1, 2 * a2 + b1p) * r2(2 * b2 + c, 2 * b2p + c2);
                                }
                        }
                    out(2 * a + c, 2 * a2 + c2) = acc;
                }
    return out;
}

std::array<int, 4> swap_corrections() {
    std::array<int, 4> result{};
    Mat4 psi = make_bell(BellKind::PsiPlus).matrix();
    Eigen::Vector4cd target = bell_vector(BellKind::PsiPlus);
    for (int k = 0; k < 4; k++) {
        Mat4 sigma = project_inner(psi, psi, bell_vector(kOutcomeOrder[k]));
        sigma /= sigma.trace().real();
        double best = -1;
        for (int c = 0; c < 4; c++) {
            Mat4 u = kron(pauli(0), pauli(c));
            double f = (target.adjoint() * u * sigma * u.adjoint() * target)(0, 0).real();
            if (f > best) {
                best = f;
                result[k] = c;
            }
        }
    }
    return result;
}

double clamp_eig(double v) { return (v < 0 && v >= -1e-10) ? 0.0 : v; }

}  // namespace

std::string bell_label(BellKind kind) {
    switch (kind) {
        case BellKind::PsiPlus:
            return "Psi+";
        case BellKind::PsiMinus:
            return "Psi-";
        case BellKind::PhiPlus:
            return "Phi+";
        default:
            return "Phi-";
    }
}

TwoQubitState::TwoQubitState(const Mat4 &m) : m_(m) {
    if (!is_valid(m)) throw std::invalid_argument("matrix is not a valid two-qubit density operator");
}

bool TwoQubitState::is_valid(const Mat4 &m, double herm_tol, double trace_tol, double eig_tol) {
    if (!m.allFinite()) return false;
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > herm_tol) return false;
    if (std::abs(m.trace() - cd(1)) > trace_tol) return false;
    Mat4 h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat4> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -eig_tol;
}

double TwoQubitState::purity() const { return (m_ * m_).trace().real(); }

Eigen::Vector4cd bell_vector(BellKind kind) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    switch (kind) {
        case BellKind::PsiPlus:
            v(0) = kInvSqrt2;
            v(3) = kInvSqrt2;
            break;
        case BellKind::PsiMinus:
            v(0) = kInvSqrt2;
            v(3) = -kInvSqrt2;
            break;
        case BellKind::PhiPlus:
            v(1) = kInvSqrt2;
            v(2) = kInvSqrt2;
            break;
        case BellKind::PhiMinus:
            v(1) = kInvSqrt2;
            v(2) = -kInvSqrt2;
            break;
    }
    return v;
}

TwoQubitState make_bell(BellKind kind) {
    Eigen::Vector4cd v = bell_vector(kind);
    return TwoQubitState(v * v.adjoint());
}

TwoQubitState make_isotropic(double lambda) {
    check_unit(lambda, "visibility");
    Eigen::Vector4cd v = bell_vector(BellKind::PsiPlus);
    Mat4 m = lambda * (v * v.adjoint()) + (1 - lambda) * Mat4::Identity() / 4.0;
    return TwoQubitState(m);
}

double fidelity_psi_plus(const TwoQubitState &rho) {
    Eigen::Vector4cd v = bell_vector(BellKind::PsiPlus);
    return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

double overlap(const TwoQubitState &a, const TwoQubitState &b) {
    return (a.matrix() * b.matrix()).trace().real();
}

ChannelModel ChannelModel::depolarizing(double p) {
    if (!(p >= 0 && p <= 4.0 / 3.0)) throw std::invalid_argument("depolarizing p must lie in [0,4/3]");
    return {Kind::Depolarizing, p, 0};
}

ChannelModel ChannelModel::erasure(double eta_e) {
    check_unit(eta_e, "eta_e");
    return {Kind::Erasure, eta_e, 0};
}

ChannelModel ChannelModel::thermal(double eta_g, double kappa_g) {
    check_unit(eta_g, "eta_g");
    check_unit(kappa_g, "kappa_g");
    return {Kind::Thermal, eta_g, kappa_g};
}

std::vector<Mat2> ChannelModel::kraus() const {
    std::vector<Mat2> ks;
    if (kind == Kind::Depolarizing) {
        double p = a;
        ks.push_back(std::sqrt(std::max(0.0, 1 - 3 * p / 4)) * pauli(0));
        for (int k = 1; k < 4; k++) ks.push_back(std::sqrt(p) / 2 * pauli(k));
    } else if (kind == Kind::Thermal) {
        double eta = a, kap = b;
        Mat2 a1, a2, a3, a4;
        a1 << 1, 0, 0, std::sqrt(eta);
        a2 << 0, 1, 0, 0;
        a3 << std::sqrt(eta), 0, 0, 1;
        a4 << 0, 0, 1, 0;
        ks.push_back(std::sqrt(1 - kap) * a1);
        ks.push_back(std::sqrt((1 - eta) * (1 - kap)) * a2);
        ks.push_back(std::sqrt(kap) * a3);
        ks.push_back(std::sqrt(kap * (1 - eta)) * a4);
    } else {
        throw std::logic_error("erasure channel has no qubit Kraus representation");
    }
    return ks;
}

Mat4 apply_local_kraus(const Mat4 &rho, const std::vector<Mat2> &kraus) {
    Mat4 out = Mat4::Zero();
    for (const auto &ka : kraus)
        for (const auto &kb : kraus) {
            Mat4 k = kron(ka, kb);
            out += k * rho * k.adjoint();
        }
    return out;
}

ChannelResult apply_pair_channel(const TwoQubitState &rho, const ChannelModel &ch) {
    if (ch.kind == ChannelModel::Kind::Erasure) return {rho, ch.a * ch.a};
    Mat4 out = apply_local_kraus(rho.matrix(), ch.kraus());
    out = (out + out.adjoint()) / 2.0;
    return {TwoQubitState(out), 1.0};
}

double depol_yield(double p, int n, DepolMode mode) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (!(p >= 0 && p <= 4.0 / 3.0)) throw std::invalid_argument("depolarizing p must lie in [0,4/3]");
    if (n == 0) return 1.0;
    double a = (1 - p) * (1 - p);
    if (mode == DepolMode::IteratedChannel) return (1 + 3 * std::pow(a, n)) / 4;
    return std::pow(1 - p, 2 * n) - 0.25 * (p - 2) * p * ((n - 1) * std::pow(1 - p, 2 * (n - 1)) + 1);
}

double thermal_yield(double eta_g, double kappa_g) {
    check_unit(eta_g, "eta_g");
    check_unit(kappa_g, "kappa_g");
    double d = 1 - eta_g;
    return 0.5 * (1 + eta_g * eta_g) + kappa_g * (kappa_g - 1) * d * d;
}

SwapOutcome bell_swap(const TwoQubitState &rho1, const TwoQubitState &rho2, double q) {
    check_unit(q, "q");
    static const std::array<int, 4> corr = swap_corrections();
    SwapOutcome out{{}, 0.0, TwoQubitState(Mat4::Identity() / 4.0)};
    Mat4 corrected = Mat4::Zero();
    for (int k = 0; k < 4; k++) {
        Mat4 sigma = project_inner(rho1.matrix(), rho2.matrix(), bell_vector(kOutcomeOrder[k]));
        double w = sigma.trace().real();
        Mat4 u = kron(pauli(0), pauli(corr[k]));
        corrected += u * sigma * u.adjoint();
        Mat4 post = w > 0 ? Mat4(sigma / w) : Mat4(Mat4::Identity() / 4.0);
        post = (post + post.adjoint()) / 2.0;
        out.branches.push_back({q * w, TwoQubitState(post), bell_label(kOutcomeOrder[k])});
    }
    out.branches.push_back({1 - q, TwoQubitState(Mat4::Identity() / 4.0), "bot"});
    Mat4 total = q * corrected + (1 - q) * Mat4::Identity() / 4.0;
    total = (total + total.adjoint()) / 2.0;
    out.corrected_state = TwoQubitState(total);
    // Visibility of the isotropic twirl of the corrected state.
    out.corrected_visibility = (4 * fidelity_psi_plus(out.corrected_state) - 1) / 3;
    return out;
}

Eigen::Matrix3d correlation_matrix(const TwoQubitState &rho, const std::array<int, 3> &order) {
    Eigen::Matrix3d t;
    for (int n = 0; n < 3; n++)
        for (int m = 0; m < 3; m++)
            t(n, m) = (rho.matrix() * kron(pauli(order[n] + 1), pauli(order[m] + 1))).trace().real();
    return t;
}

HorodeckiMeasures horodecki_measures(const TwoQubitState &rho) {
    Eigen::Matrix3d t = correlation_matrix(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t, Eigen::EigenvaluesOnly);
    Eigen::Vector3d ev = es.eigenvalues();  // ascending
    double n = 0;
    for (int i = 0; i < 3; i++) n += std::sqrt(std::max(0.0, clamp_eig(ev(i))));
    double m = std::max(0.0, clamp_eig(ev(1))) + std::max(0.0, clamp_eig(ev(2)));
    return {n, m};
}

double concurrence(const TwoQubitState &rho) {
    Mat4 yy = kron(pauli(2), pauli(2));
    Mat4 r = rho.matrix() * yy * rho.matrix().conjugate() * yy;
    Eigen::ComplexEigenSolver<Mat4> es(r, false);
    std::array<double, 4> l{};
    for (int i = 0; i < 4; i++) l[i] = std::sqrt(std::max(0.0, clamp_eig(es.eigenvalues()(i).real())));
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

TeleportFidelity teleport_fidelity(double f, int d) {
    check_unit(f, "singlet fraction");
    if (d < 2) throw std::invalid_argument("d must be >= 2");
    return {(f * d + 1) / (d + 1), 2.0 / (d + 1)};
}

TiltedChshBounds tilted_chsh_bounds(const TiltedChshParams &params) {
    if (!(params.alpha >= 1)) throw std::invalid_argument("alpha must be >= 1");
    if (!(params.beta >= 0)) throw std::invalid_argument("beta must be >= 0");
    double a = params.alpha, b = params.beta;
    return {b + 2 * a, 2 * std::sqrt((1 + a * a) * (1 + b * b / 4))};
}

bool isotropic_separable(double lambda, int d) {
    check_unit(lambda, "visibility");
    if (d < 2) throw std::invalid_argument("d must be >= 2");
    double dd = d;
    // p(lambda) <= 1/d rearranged to avoid rounding at the boundary: lambda (d^2-1) + 1 <= d.
    return lambda * (dd * dd - 1) <= dd - 1 + 1e-15;
}

}  // namespace qnetlim
