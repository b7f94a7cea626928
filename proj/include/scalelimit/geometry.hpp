#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scalelimit/rpoly.hpp"

namespace scalelimit {

// (m_1, ..., m_n); the multitype is (2m_1, ..., 2m_n, 1).
struct WeightTuple {
    std::vector<int> m;

    std::vector<int> multitype() const;
    Rational lambda(int k) const { return Rational(1, 2 * m[static_cast<std::size_t>(k)]); }
};

// rho = u + P + R1 + R2(v) + v R(z).
struct DomainSpec {
    std::string name;
    int n = 0;
    RPoly P, R1, R, R2;
    WeightTuple weights;
    bool weights_given = false;

    RPoly rho() const;
};

// Parse the key/value domain format; infers weights from P when absent.
DomainSpec parse_domain(const std::string& text);

struct Violation {
    std::string component;
    std::string monomial;
    std::string weight;
    std::string reason;
};

struct ValidationReport {
    bool valid = true;
    std::vector<Violation> violations;
};

ValidationReport validate_domain(const DomainSpec& spec);

WeightTuple infer_weights(const RPoly& P);

// sigma = sum_k |z_k|^{2 m_k}
RPoly sigma(const WeightTuple& w);
// 4 sum_k d^2 P / dz_k dzbar_k
RPoly laplacian(const RPoly& P);

// L_{kl} = d^2 P / dz_k dzbar_l, row-major.
class LeviMatrix {
public:
    explicit LeviMatrix(const RPoly& P);

    int size() const { return n_; }
    const RPoly& entry(int k, int l) const { return e_[static_cast<std::size_t>(k * n_ + l)]; }
    bool is_hermitian() const;
    Eigen::MatrixXcd eval(const std::vector<std::complex<double>>& z) const;

private:
    int n_;
    std::vector<RPoly> e_;
    std::vector<NumericPoly> num_;
};

double min_eigenvalue(const Eigen::MatrixXcd& h);

// Sample set for sampled plurisubharmonicity checks: points of the unit
// polydisc from a Halton sequence, seeded uniform draws, and points on
// coordinate subspaces. Deterministic for a given (n, budget, seed).
std::vector<std::vector<std::complex<double>>> polydisc_samples(int n, std::size_t budget, std::uint64_t seed);

struct PshCertificate {
    double min_eig = 0;
    std::vector<std::complex<double>> witness;
    bool psh = true;
    std::size_t samples = 0;
};

struct SamplingOptions {
    std::size_t budget = 10000;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    unsigned threads = 0; // 0: hardware concurrency, capped
};

PshCertificate psh_check(const RPoly& P, const SamplingOptions& opt = {});

struct StrongHReport {
    double delta = 0;
    bool extendible = false;
    std::string verdict;
    PshCertificate at_delta; // certificate of P - delta*sigma at the reported delta
};

StrongHReport strong_h_extendible(const RPoly& P, const WeightTuple& w, const SamplingOptions& opt = {});

// Degree 2m of a one-variable homogeneous model polynomial.
int model_type_2d(const RPoly& P);

} // namespace scalelimit
