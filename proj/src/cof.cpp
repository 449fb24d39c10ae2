#include "cofsec/cof.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"

namespace cofsec {

EffectiveMac build_effective_mac(const ChannelConfig& config, const PowerAllocation& alloc,
                                 int receiver_l) {
    const int K = config.K;
    if (receiver_l < 0 || receiver_l >= K)
        throw std::invalid_argument("build_effective_mac: receiver index out of range");
    const auto check = check_allocation(alloc, config);
    if (!check.ok()) throw InfeasibleError("build_effective_mac: " + check.joined());

    std::vector<double> msgTotal(K, 0.0), jamTotal(K, 0.0);
    for (int j = 0; j < K; ++j) {
        msgTotal[j] = std::accumulate(alloc.Pm[j].begin(), alloc.Pm[j].end(), 0.0);
        jamTotal[j] = std::accumulate(alloc.PJ[j].begin(), alloc.PJ[j].end(), 0.0);
    }

    const double gll = config.G[receiver_l][receiver_l];
    const double denom = std::sqrt(gll * gll * jamTotal[receiver_l] + 1.0);
    const double hl = config.h[receiver_l];

    EffectiveMac mac;
    mac.receiver = receiver_l;
    mac.h_eff.resize(K);
    mac.P_eff.resize(K);
    mac.b_eff.resize(K);
    for (int j = 0; j < K; ++j) {
        mac.h_eff(j) = (j == receiver_l ? hl : 1.0) / denom;
        mac.P_eff(j) = (j == receiver_l)
                           ? msgTotal[j]
                           : hl * hl * msgTotal[j] + config.G[j][receiver_l] *
                                                         config.G[j][receiver_l] * jamTotal[j];
        mac.b_eff(j) = std::sqrt(mac.P_eff(j) / config.P);
    }
    return mac;
}

Eigen::MatrixXd gram_matrix(const EffectiveMac& mac) {
    const Eigen::VectorXd dh = mac.P_eff.cwiseProduct(mac.h_eff);  // D h
    const double denom = 1.0 + mac.h_eff.dot(dh);                  // 1 + h^T D h
    Eigen::MatrixXd Q = mac.P_eff.asDiagonal();
    Q.noalias() -= (dh * dh.transpose()) / denom;
    return Q;
}

MmseResult mmse_sigma2(const EffectiveMac& mac, const IntVector& a) {
    if (a.size() != mac.h_eff.size())
        throw std::invalid_argument("mmse_sigma2: coefficient length mismatch");
    if ((a.array() == 0).all()) throw std::invalid_argument("mmse_sigma2: zero coefficient vector");

    double aDh = 0.0, hDh = 0.0, aDa = 0.0;
    for (int j = 0; j < a.size(); ++j) {
        const double aj = static_cast<double>(a(j));
        const double hj = mac.h_eff(j);
        const double pj = mac.P_eff(j);
        aDh += aj * hj * pj;
        hDh += hj * hj * pj;
        aDa += aj * aj * pj;
    }
    const double beta = aDh / (1.0 + hDh);
    const double sigma2 = std::max(0.0, aDa - beta * aDh);
    return {sigma2, beta};
}

namespace {

// Gram-based LLL (delta = 0.75) over the unimodular row transforms of the
// identity. Dimensions here are tiny, so the Gram-Schmidt data is recomputed
// from scratch after every basis change.
class GramLll {
  public:
    GramLll(const Eigen::MatrixXd& Q, double delta) : Q_(Q), delta_(delta), n_(Q.rows()) {
        U_ = IntMatrix::Identity(n_, n_);
    }

    // Returns false if the Gram-Schmidt norms collapse numerically.
    bool run() {
        if (!compute_gso()) return false;
        int k = 1;
        int guard = 0;
        const int guardMax = 10000 * n_ * n_;
        while (k < n_) {
            if (++guard > guardMax) return false;
            for (int j = k - 1; j >= 0; --j) {
                const auto q = std::llround(mu_(k, j));
                if (q != 0) {
                    U_.row(k) -= q * U_.row(j);
                    if (!compute_gso()) return false;
                }
            }
            if (B_(k) >= (delta_ - mu_(k, k - 1) * mu_(k, k - 1)) * B_(k - 1)) {
                ++k;
            } else {
                U_.row(k).swap(U_.row(k - 1));
                if (!compute_gso()) return false;
                k = std::max(k - 1, 1);
            }
        }
        return true;
    }

    const IntMatrix& basis() const { return U_; }

  private:
    bool compute_gso() {
        const Eigen::MatrixXd Ud = U_.cast<double>();
        const Eigen::MatrixXd G = Ud * Q_ * Ud.transpose();
        const double scale = std::max(G.diagonal().maxCoeff(), 1e-300);
        mu_ = Eigen::MatrixXd::Zero(n_, n_);
        B_ = Eigen::VectorXd::Zero(n_);
        for (int i = 0; i < n_; ++i) {
            double bi = G(i, i);
            for (int j = 0; j < i; ++j) {
                double m = G(i, j);
                for (int t = 0; t < j; ++t) m -= mu_(i, t) * mu_(j, t) * B_(t);
                mu_(i, j) = m / B_(j);
                bi -= mu_(i, j) * mu_(i, j) * B_(j);
            }
            if (!std::isfinite(bi) || bi <= scale * 1e-14) return false;
            B_(i) = bi;
        }
        return true;
    }

    Eigen::MatrixXd Q_;
    double delta_;
    int n_;
    IntMatrix U_;
    Eigen::MatrixXd mu_;
    Eigen::VectorXd B_;
};

double quad_form(const Eigen::MatrixXd& Q, const IntMatrix& U, int row) {
    const Eigen::VectorXd a = U.row(row).transpose().cast<double>();
    return a.dot(Q * a);
}

}  // namespace

IntMatrix select_coefficients(const EffectiveMac& mac) {
    const int K = static_cast<int>(mac.h_eff.size());
    Eigen::MatrixXd Q = gram_matrix(mac);

    GramLll lll(Q, 0.75);
    bool reduced = lll.run();
    if (!reduced) {
        // Degenerate Gram: drop the signal correction and reduce under
        // diag(P_eff) alone. Rates degrade but stay well defined.
        Q = Eigen::MatrixXd(mac.P_eff.asDiagonal());
        lll = GramLll(Q, 0.75);
        if (!lll.run())
            throw ComputationError("select_coefficients: Gram matrix irrecoverably singular");
    }

    IntMatrix A = lll.basis();
    std::vector<int> order(K);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> forms(K);
    for (int i = 0; i < K; ++i) forms[i] = quad_form(Q, A, i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return forms[a] < forms[b]; });
    IntMatrix sorted(K, K);
    for (int i = 0; i < K; ++i) sorted.row(i) = A.row(order[i]);
    return sorted;
}

namespace {

// Kuhn augmenting path: can `row` be matched to a free, unassigned column?
bool augment(const IntMatrix& A, int row, const std::vector<bool>& assigned,
             std::vector<bool>& seen, std::vector<int>& matchOfCol) {
    const int K = static_cast<int>(A.cols());
    for (int j = 0; j < K; ++j) {
        if (A(row, j) == 0 || assigned[j] || seen[j]) continue;
        seen[j] = true;
        if (matchOfCol[j] < 0 || augment(A, matchOfCol[j], assigned, seen, matchOfCol)) {
            matchOfCol[j] = row;
            return true;
        }
    }
    return false;
}

// True iff rows firstRow..K-1 can each still claim a distinct unassigned
// column from their support.
bool completable(const IntMatrix& A, int firstRow, const std::vector<bool>& assigned) {
    const int K = static_cast<int>(A.rows());
    std::vector<int> matchOfCol(K, -1);
    for (int r = firstRow; r < K; ++r) {
        std::vector<bool> seen(K, false);
        if (!augment(A, r, assigned, seen, matchOfCol)) return false;
    }
    return true;
}

// Step k resolves the strongest not-yet-decoded participant of combination k
// (ties: smallest index), restricted to choices that leave the remaining
// combinations a complete assignment. Full-rank A always admits one.
std::vector<int> choose_decode_order(const IntMatrix& A, const Eigen::VectorXd& P_eff) {
    const int K = static_cast<int>(A.rows());
    std::vector<int> order;
    std::vector<bool> assigned(K, false);
    for (int k = 0; k < K; ++k) {
        std::vector<int> candidates;
        for (int j = 0; j < K; ++j)
            if (A(k, j) != 0 && !assigned[j]) candidates.push_back(j);
        std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
            if (P_eff(a) != P_eff(b)) return P_eff(a) > P_eff(b);
            return a < b;
        });
        int pick = -1;
        for (int j : candidates) {
            assigned[j] = true;
            if (completable(A, k + 1, assigned)) {
                pick = j;
                break;
            }
            assigned[j] = false;
        }
        if (pick < 0)
            throw ComputationError("successive_rates: combination " + std::to_string(k + 1) +
                                   " touches only already-decoded codewords");
        order.push_back(pick);
    }
    return order;
}

struct SchurChain {
    std::vector<Eigen::MatrixXd> covariances;  // Q_1 .. Q_K (before each step)
    std::vector<double> sigma2;
};

SchurChain run_schur_chain(const EffectiveMac& mac, const IntMatrix& A) {
    const int K = static_cast<int>(mac.h_eff.size());
    if (A.rows() != K || A.cols() != K)
        throw std::invalid_argument("successive_rates: A must be K x K");
    if (det_integer(A) == 0)
        throw ComputationError("successive_rates: rank-deficient coefficient matrix");

    SchurChain chain;
    Eigen::MatrixXd Qk = gram_matrix(mac);
    const double tol = 1e-14 * std::max(Qk.trace(), 1.0);
    for (int k = 0; k < K; ++k) {
        chain.covariances.push_back(Qk);
        const Eigen::VectorXd a = A.row(k).transpose().cast<double>();
        const Eigen::VectorXd qa = Qk * a;
        const double s2 = std::max(0.0, a.dot(qa));
        chain.sigma2.push_back(s2);
        // sigma2 == 0 means the combination is already determined; conditioning
        // on it changes nothing.
        if (s2 > tol) Qk.noalias() -= (qa * qa.transpose()) / s2;
    }
    return chain;
}

}  // namespace

CofSolution successive_rates(const EffectiveMac& mac, const IntMatrix& A) {
    const int K = static_cast<int>(mac.h_eff.size());
    const SchurChain chain = run_schur_chain(mac, A);

    CofSolution sol;
    sol.receiver = mac.receiver;
    sol.A = A;
    sol.sigma2 = chain.sigma2;
    sol.P_eff.assign(mac.P_eff.data(), mac.P_eff.data() + K);
    sol.decodeOrder = choose_decode_order(A, mac.P_eff);

    for (int k = 0; k < K; ++k) {
        const int pick = sol.decodeOrder[k];
        const double s2 = chain.sigma2[k];
        double rate;
        if (s2 <= 0.0) {
            rate = kRateCapBits;
        } else {
            rate = 0.5 * std::log2(mac.P_eff(pick) / s2);
            rate = std::clamp(rate, 0.0, kRateCapBits);
        }
        sol.R_comb.push_back(rate);
    }

    sol.beta1 = mmse_sigma2(mac, A.row(0).transpose()).beta;
    return sol;
}

ConditioningDiagnostics conditioning_diagnostics(const EffectiveMac& mac, const IntMatrix& A) {
    const SchurChain chain = run_schur_chain(mac, A);
    ConditioningDiagnostics diag;
    for (const auto& Qk : chain.covariances) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Qk, Eigen::EigenvaluesOnly);
        diag.minEigenvalues.push_back(es.eigenvalues().minCoeff());
        diag.traces.push_back(Qk.trace());
    }
    return diag;
}

CofSolution receiver_solution(const ChannelConfig& config, const PowerAllocation& alloc,
                              int receiver_l) {
    const EffectiveMac mac = build_effective_mac(config, alloc, receiver_l);
    return successive_rates(mac, select_coefficients(mac));
}

std::int64_t det_integer(const IntMatrix& A) {
    const int n = static_cast<int>(A.rows());
    std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = A(i, j);

    // Bareiss fraction-free elimination
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * static_cast<std::int64_t>(m[n - 1][n - 1]);
}

std::string to_json(const CofSolution& sol) {
    nlohmann::json j;
    j["receiver"] = sol.receiver + 1;
    std::vector<std::vector<std::int64_t>> rows;
    for (int i = 0; i < sol.A.rows(); ++i) {
        std::vector<std::int64_t> row(sol.A.cols());
        for (int c = 0; c < sol.A.cols(); ++c) row[c] = sol.A(i, c);
        rows.push_back(std::move(row));
    }
    j["A"] = rows;
    j["beta1"] = sol.beta1;
    j["sigma2"] = sol.sigma2;
    std::vector<int> order1;
    for (int v : sol.decodeOrder) order1.push_back(v + 1);
    j["decodeOrder"] = order1;
    j["R_comb"] = sol.R_comb;
    j["P_eff"] = sol.P_eff;
    return j.dump(2);
}

}  // namespace cofsec
