#include "scalelimit/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "scalelimit/kvfile.hpp"

namespace scalelimit {

std::vector<int> WeightTuple::multitype() const {
    std::vector<int> t;
    for (int mk : m) t.push_back(2 * mk);
    t.push_back(1);
    return t;
}

RPoly DomainSpec::rho() const {
    RPoly r(Monomial::u(n), GaussRational(1));
    r += P;
    r += R1;
    r += R2;
    r += R * RPoly(Monomial::v(n), GaussRational(1));
    return r;
}

namespace {

std::vector<int> parse_weight_list(const std::string& s) {
    std::string t = trim(s);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw InputError("weights must look like [m1, ..., mn]");
    std::vector<int> m;
    for (const auto& part : split(t.substr(1, t.size() - 2), ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            m.push_back(v);
        } catch (const std::exception&) {
            throw InputError("invalid weight '" + part + "'");
        }
    }
    return m;
}

} // namespace

DomainSpec parse_domain(const std::string& text) {
    DomainSpec spec;
    std::string P, R1, R, R2, weights;
    bool have_n = false;
    for (const auto& kv : parse_key_values(text)) {
        auto where = [&](const std::string& msg) { return "line " + std::to_string(kv.line) + ": " + msg; };
        if (kv.key == "n") {
            try {
                std::size_t used = 0;
                spec.n = std::stoi(kv.value, &used);
                if (used != kv.value.size()) throw std::invalid_argument("n");
            } catch (const std::exception&) {
                throw InputError(where("n must be an integer"));
            }
            if (spec.n < 1) throw InputError(where("n must be at least 1"));
            have_n = true;
        } else if (kv.key == "P") {
            P = kv.value;
        } else if (kv.key == "R1") {
            R1 = kv.value;
        } else if (kv.key == "R") {
            R = kv.value;
        } else if (kv.key == "R2") {
            R2 = kv.value;
        } else if (kv.key == "weights") {
            weights = kv.value;
        } else if (kv.key == "name") {
            spec.name = kv.value;
        } else {
            throw InputError(where("unknown key '" + kv.key + "'"));
        }
    }
    if (!have_n) throw InputError("domain file is missing 'n'");
    if (P.empty()) throw InputError("domain file is missing 'P'");
    spec.P = parse_poly(P, spec.n);
    spec.R1 = R1.empty() ? RPoly(spec.n) : parse_poly(R1, spec.n);
    spec.R = R.empty() ? RPoly(spec.n) : parse_poly(R, spec.n);
    spec.R2 = R2.empty() ? RPoly(spec.n) : parse_poly(R2, spec.n);
    if (!weights.empty()) {
        spec.weights.m = parse_weight_list(weights);
        if (static_cast<int>(spec.weights.m.size()) != spec.n)
            throw InputError("weights has " + std::to_string(spec.weights.m.size()) + " entries, expected " +
                             std::to_string(spec.n));
        for (int mk : spec.weights.m)
            if (mk < 1) throw InputError("weights must be positive integers");
        spec.weights_given = true;
    } else {
        spec.weights = infer_weights(spec.P);
    }
    return spec;
}

ValidationReport validate_domain(const DomainSpec& spec) {
    ValidationReport rep;
    auto flag = [&](const std::string& comp, const Monomial& m, const std::string& reason) {
        std::string w = "-";
        if (!spec.weights.m.empty() && static_cast<int>(spec.weights.m.size()) == spec.n) w = to_string(m.weight(spec.weights.m));
        rep.violations.push_back({comp, to_string(m), w, reason});
        rep.valid = false;
    };
    if (static_cast<int>(spec.weights.m.size()) != spec.n) {
        rep.violations.push_back({"weights", "", "", "weight tuple has the wrong length"});
        rep.valid = false;
        return rep;
    }
    if (spec.P.is_zero()) {
        rep.violations.push_back({"P", "", "", "P is zero"});
        rep.valid = false;
    }
    const auto& m = spec.weights.m;
    for (const auto& [mono, c] : spec.P.terms()) {
        if (mono.has_w())
            flag("P", mono, "P may not depend on w");
        else if (mono.is_harmonic() || mono.is_constant())
            flag("P", mono, "pluriharmonic monomial in P");
        else if (mono.weight(m) != 1)
            flag("P", mono, "weight differs from 1");
    }
    for (const auto& [mono, c] : spec.R1.terms()) {
        if (mono.has_w())
            flag("R1", mono, "R1 may not depend on w");
        else if (mono.weight(m) <= 1)
            flag("R1", mono, "weight must exceed 1");
    }
    for (const auto& [mono, c] : spec.R.terms()) {
        if (mono.has_w())
            flag("R", mono, "R may not depend on w");
        else if (mono.weight(m) <= Rational(1, 2))
            flag("R", mono, "weight must exceed 1/2");
    }
    for (const auto& [mono, c] : spec.R2.terms()) {
        if (mono.z_degree() != 0 || mono.eu() != 0)
            flag("R2", mono, "R2 must be a polynomial in Im(w) only");
        else if (mono.ev() < 2)
            flag("R2", mono, "R2 must vanish to order 2");
    }
    for (const auto* part : {&spec.P, &spec.R1, &spec.R, &spec.R2})
        if (!part->is_real()) {
            rep.violations.push_back({"rho", "", "", "not real-valued"});
            rep.valid = false;
        }
    return rep;
}

WeightTuple infer_weights(const RPoly& P) {
    const int n = P.nvars();
    if (P.is_zero()) throw InputError("cannot infer weights of the zero polynomial");
    std::vector<std::vector<Rational>> rows;
    for (const auto& [m, c] : P.terms()) {
        if (m.has_w()) throw InputError("cannot infer weights: P depends on w");
        std::vector<Rational> row(static_cast<std::size_t>(n + 1));
        for (int k = 0; k < n; ++k) row[static_cast<std::size_t>(k)] = m.a(k) + m.b(k);
        row[static_cast<std::size_t>(n)] = 1;
        rows.push_back(std::move(row));
    }
    // Gauss-Jordan elimination over Q.
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (int col = 0; col < n && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && sgn(rows[piv][static_cast<std::size_t>(col)]) == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        Rational inv = 1 / rows[r][static_cast<std::size_t>(col)];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][static_cast<std::size_t>(col)]) == 0) continue;
            Rational f = rows[i][static_cast<std::size_t>(col)];
            for (std::size_t j = 0; j <= static_cast<std::size_t>(n); ++j) rows[i][j] -= f * rows[r][j];
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
        if (sgn(rows[i][static_cast<std::size_t>(n)]) != 0)
            throw InputError("P is not weighted homogeneous for any weights (inconsistent system)");
    if (static_cast<int>(r) < n) {
        std::string free;
        for (int k = 0; k < n; ++k)
            if (std::find(pivot_col.begin(), pivot_col.end(), k) == pivot_col.end())
                free += (free.empty() ? "" : ", ") + std::string("z") + std::to_string(k + 1);
        throw InputError("weights are not determined by P; free variables: " + free);
    }
    WeightTuple w;
    w.m.resize(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < r; ++i) {
        Rational lam = rows[i][static_cast<std::size_t>(n)];
        lam.canonicalize();
        int k = pivot_col[i];
        if (sgn(lam) <= 0 || lam > Rational(1, 2))
            throw InputError("inferred weight for z" + std::to_string(k + 1) + " is " + to_string(lam) + ", outside (0, 1/2]");
        Rational inv = 1 / (2 * lam);
        inv.canonicalize();
        if (inv.get_den() != 1)
            throw InputError("inferred weight for z" + std::to_string(k + 1) + " is " + to_string(lam) + ", not of the form 1/(2m)");
        w.m[static_cast<std::size_t>(k)] = static_cast<int>(inv.get_num().get_si());
    }
    return w;
}

RPoly sigma(const WeightTuple& w) {
    int n = static_cast<int>(w.m.size());
    RPoly s(n);
    for (int k = 0; k < n; ++k) {
        Monomial m(n);
        m.a(k) = m.b(k) = w.m[static_cast<std::size_t>(k)];
        s.add_term(m, GaussRational(1));
    }
    return s;
}

RPoly laplacian(const RPoly& P) {
    RPoly r(P.nvars());
    for (int k = 0; k < P.nvars(); ++k) r += P.diff_z(k).diff_zbar(k);
    return r.scaled(GaussRational(4));
}

LeviMatrix::LeviMatrix(const RPoly& P) : n_(P.nvars()) {
    for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) {
            e_.push_back(P.diff_z(k).diff_zbar(l));
            num_.emplace_back(e_.back());
        }
}

bool LeviMatrix::is_hermitian() const {
    for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l)
            if (entry(l, k) != entry(k, l).conj()) return false;
    return true;
}

Eigen::MatrixXcd LeviMatrix::eval(const std::vector<std::complex<double>>& z) const {
    Eigen::MatrixXcd h(n_, n_);
    for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) h(k, l) = num_[static_cast<std::size_t>(k * n_ + l)].eval_complex(z);
    return h;
}

double min_eigenvalue(const Eigen::MatrixXcd& h) {
    if (h.rows() == 1) return h(0, 0).real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

namespace {

double radical_inverse(std::uint64_t i, unsigned base) {
    double f = 1, r = 0;
    while (i) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

const unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

unsigned thread_count(unsigned requested) {
    unsigned t = requested ? requested : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    return t;
}

// Calls body(begin, end, chunk) over fixed chunks; chunk layout does not depend on threads.
template <class F>
void for_chunks(std::size_t count, unsigned threads, std::size_t nchunks, F body) {
    std::vector<std::thread> pool;
    std::size_t per = (count + nchunks - 1) / nchunks;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t c = next++;
            if (c >= nchunks) return;
            std::size_t b = c * per, e = std::min(count, b + per);
            if (b < e) body(b, e, c);
        }
    };
    unsigned t = std::min<unsigned>(threads, static_cast<unsigned>(nchunks));
    for (unsigned i = 1; i < t; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

struct LevelMin {
    double value = std::numeric_limits<double>::infinity();
    std::size_t index = 0;
};

// Minimum Levi eigenvalue of P - delta*sigma for each delta, over all samples.
std::vector<LevelMin> sampled_minima(const RPoly& P, const std::vector<RPoly>& shifts,
                                     const std::vector<std::vector<std::complex<double>>>& pts, unsigned threads) {
    LeviMatrix levi(P);
    std::vector<LeviMatrix> shift_levi;
    for (const auto& s : shifts) shift_levi.emplace_back(s);
    const std::size_t levels = shifts.size() + 1;
    const std::size_t nchunks = 64;
    std::vector<std::vector<LevelMin>> per_chunk(nchunks, std::vector<LevelMin>(levels));
    for_chunks(pts.size(), thread_count(threads), nchunks, [&](std::size_t b, std::size_t e, std::size_t c) {
        auto& mins = per_chunk[c];
        for (std::size_t i = b; i < e; ++i) {
            Eigen::MatrixXcd h = levi.eval(pts[i]);
            double v = min_eigenvalue(h);
            if (v < mins[0].value) mins[0] = {v, i};
            for (std::size_t s = 0; s < shifts.size(); ++s) {
                double vs = min_eigenvalue(h - shift_levi[s].eval(pts[i]));
                if (vs < mins[s + 1].value) mins[s + 1] = {vs, i};
            }
        }
    });
    std::vector<LevelMin> out(levels);
    for (const auto& mins : per_chunk)
        for (std::size_t l = 0; l < levels; ++l)
            if (mins[l].value < out[l].value) out[l] = mins[l];
    return out;
}

} // namespace

std::vector<std::vector<std::complex<double>>> polydisc_samples(int n, std::size_t budget, std::uint64_t seed) {
    if (budget < 1) throw InputError("sample budget must be at least 1");
    if (n > 8) throw InputError("sampling supports n <= 8");
    std::vector<std::vector<std::complex<double>>> pts;
    pts.reserve(budget);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t halton = (budget + 1) / 2;
    const std::uint64_t masks = (std::uint64_t{1} << n) - 1;
    for (std::size_t i = 0; i < budget; ++i) {
        std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            double s, t;
            if (i < halton) {
                s = radical_inverse(i + 1, kPrimes[2 * k]);
                t = radical_inverse(i + 1, kPrimes[2 * k + 1]);
            } else {
                s = unif(rng);
                t = unif(rng);
            }
            z[static_cast<std::size_t>(k)] = std::polar(std::sqrt(s), 2 * std::numbers::pi * t);
        }
        // Every fourth point lies on a coordinate subspace.
        if (n > 1 && i % 4 == 3) {
            std::uint64_t support = (i / 4) % masks + 1;
            for (int k = 0; k < n; ++k)
                if (!(support >> k & 1u)) z[static_cast<std::size_t>(k)] = 0;
        }
        pts.push_back(std::move(z));
    }
    return pts;
}

PshCertificate psh_check(const RPoly& P, const SamplingOptions& opt) {
    if (P.has_w()) throw InputError("psh_check needs a polynomial in z only");
    auto pts = polydisc_samples(P.nvars(), opt.budget, opt.seed);
    auto mins = sampled_minima(P, {}, pts, opt.threads);
    PshCertificate cert;
    cert.min_eig = mins[0].value;
    cert.witness = pts[mins[0].index];
    cert.psh = cert.min_eig >= -opt.tol;
    cert.samples = pts.size();
    return cert;
}

StrongHReport strong_h_extendible(const RPoly& P, const WeightTuple& w, const SamplingOptions& opt) {
    if (static_cast<int>(w.m.size()) != P.nvars()) throw InputError("weight tuple has the wrong length");
    auto pts = polydisc_samples(P.nvars(), opt.budget, opt.seed);
    RPoly s = sigma(w);
    std::vector<RPoly> shifts;
    std::vector<double> deltas;
    for (int e = 0; e <= 20; ++e) {
        deltas.push_back(std::ldexp(1.0, -e));
        shifts.push_back(s.scaled(GaussRational(Rational(mpz_class(1), mpz_class(1) << e))));
    }
    auto mins = sampled_minima(P, shifts, pts, opt.threads);
    StrongHReport rep;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (mins[i + 1].value >= -opt.tol) {
            rep.delta = deltas[i];
            rep.extendible = true;
            rep.at_delta = {mins[i + 1].value, pts[mins[i + 1].index], true, pts.size()};
            rep.verdict = "strongly h-extendible (sampled)";
            return rep;
        }
    }
    rep.delta = 0;
    rep.extendible = false;
    rep.at_delta = {mins[0].value, pts[mins[0].index], mins[0].value >= -opt.tol, pts.size()};
    rep.verdict = "not strongly h-extendible (sampled)";
    return rep;
}

int model_type_2d(const RPoly& P) {
    if (P.nvars() != 1) throw InputError("model_type_2d needs a one-variable polynomial");
    if (P.is_zero()) throw InputError("model_type_2d: zero polynomial");
    int deg = -1;
    for (const auto& [m, c] : P.terms()) {
        if (m.has_w()) throw InputError("model_type_2d: polynomial depends on w");
        if (m.is_harmonic() || m.is_constant()) throw InputError("model_type_2d: harmonic monomial " + to_string(m));
        if (deg >= 0 && m.z_degree() != deg) throw InputError("model_type_2d: polynomial is not homogeneous");
        deg = m.z_degree();
    }
    return deg;
}

} // namespace scalelimit
