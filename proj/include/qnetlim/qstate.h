#ifndef QNETLIM_QSTATE_H
#define QNETLIM_QSTATE_H

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qnetlim {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// Bell basis. Naming follows the convention
//   Psi(+/-) = (|00> +/- |11>)/sqrt(2),  Phi(+/-) = (|01> +/- |10>)/sqrt(2).
enum class BellKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

std::string bell_label(BellKind kind);

class TwoQubitState {
   public:
    // Validates Hermiticity, unit trace and positivity; throws std::invalid_argument.
    explicit TwoQubitState(const Mat4 &m);

    const Mat4 &matrix() const { return m_; }
    double purity() const;

    static bool is_valid(const Mat4 &m, double herm_tol = 1e-12, double trace_tol = 1e-12, double eig_tol = 1e-10);

   private:
    Mat4 m_;
};

Eigen::Vector4cd bell_vector(BellKind kind);
TwoQubitState make_bell(BellKind kind);
TwoQubitState make_isotropic(double lambda);
double fidelity_psi_plus(const TwoQubitState &rho);
double overlap(const TwoQubitState &a, const TwoQubitState &b);

struct ChannelModel {
    enum class Kind { Depolarizing, Erasure, Thermal };
    Kind kind;
    double a = 0;  // p, eta_e or eta_g
    double b = 0;  // kappa_g for Thermal

    static ChannelModel depolarizing(double p);
    static ChannelModel erasure(double eta_e);
    static ChannelModel thermal(double eta_g, double kappa_g);

    // Single-qubit Kraus set. Erasure has no 2x2 Kraus representation here
    // (the erased flag lives outside the qubit space) and throws.
    std::vector<Mat2> kraus() const;
};

struct ChannelResult {
    TwoQubitState state;
    double p_both_arrive = 1.0;  // < 1 only for Erasure
};

// Applies the channel independently on both qubits. Erasure returns the
// arrival probability eta_e^2 and the unchanged conditional state.
ChannelResult apply_pair_channel(const TwoQubitState &rho, const ChannelModel &ch);

// Applies an arbitrary Kraus set on both qubits.
Mat4 apply_local_kraus(const Mat4 &rho, const std::vector<Mat2> &kraus);

enum class DepolMode { PaperFormula, IteratedChannel };

double depol_yield(double p, int n, DepolMode mode = DepolMode::PaperFormula);
double thermal_yield(double eta_g, double kappa_g);

struct SwapBranch {
    double probability;
    TwoQubitState post_state;
    std::string outcome_label;  // Psi-, Psi+, Phi-, Phi+ or "bot"
};

struct SwapOutcome {
    std::vector<SwapBranch> branches;
    double corrected_visibility;
    TwoQubitState corrected_state;
};

// Noisy standard Bell measurement on the inner qubits of rho1 (A B1) and rho2 (B2 C).
// Succeeds with probability q; failure yields the flagged branch with state I/4.
SwapOutcome bell_swap(const TwoQubitState &rho1, const TwoQubitState &rho2, double q);

struct HorodeckiMeasures {
    double N;
    double M;
};

Eigen::Matrix3d correlation_matrix(const TwoQubitState &rho, const std::array<int, 3> &order = {0, 1, 2});
HorodeckiMeasures horodecki_measures(const TwoQubitState &rho);
double concurrence(const TwoQubitState &rho);

struct TeleportFidelity {
    double quantum;
    double classical;
};
TeleportFidelity teleport_fidelity(double singlet_fraction, int d);

struct TiltedChshParams {
    double alpha = 1;
    double beta = 0;
};
struct TiltedChshBounds {
    double local;
    double quantum;
};
TiltedChshBounds tilted_chsh_bounds(const TiltedChshParams &params);

bool isotropic_separable(double lambda, int d);

}  // namespace qnetlim

#endif
