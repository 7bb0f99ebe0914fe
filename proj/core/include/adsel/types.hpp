#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace adsel {

/// One ad-serving observation: treatment flag, the two layered binary
/// outcomes, and the covariate vectors already assembled into their roles
/// (x1 selection, x2 outcome, z treatment interactions; each includes its
/// leading intercept/baseline 1).
struct ImpressionRecord {
    std::uint8_t d = 0;
    std::uint8_t y_tau = 0;
    std::uint8_t y = 0;
    std::vector<double> x1;
    std::vector<double> x2;
    std::vector<double> z;
};

/// Full coefficient vector with fixed flat ordering:
///   [gamma | alpha1 | beta | alpha2 | w1 | w2 | theta_tilde]
/// alpha1[0] is the baseline treatment effect; beta holds the outcome
/// coefficients shared by the intermediate and final equations.
struct ParameterSet {
    std::vector<double> gamma;
    std::vector<double> alpha1;
    std::vector<double> beta;
    double alpha2 = 0.0;
    double w1 = 0.0;
    double w2 = 0.0;
    double theta_tilde = 0.0;

    std::size_t flat_size() const { return gamma.size() + alpha1.size() + beta.size() + 4; }
    std::vector<double> to_flat() const;
    void assign_flat(std::span<const double> flat);
    static ParameterSet from_flat(std::span<const double> flat, std::size_t k1, std::size_t kz,
                                  std::size_t k2);

    /// Copula parameter implied by theta_tilde.
    double theta() const;
};

/// Linear indices of the three equations at both treatment arms.
struct LinearIndices {
    double a;  // selection index
    double b0; // intermediate index, d = 0
    double b1; // intermediate index, d = 1
    double c0; // final index, d = 0
    double c1; // final index, d = 1
};

/// Joint probabilities of the six observable (d, y_tau, y) cells, in order
/// (0,0,-), (0,1,0), (0,1,1), (1,0,-), (1,1,0), (1,1,1).
struct CellProbabilities {
    double p[6];

    static std::size_t index(int d, int y_tau, int y) {
        return static_cast<std::size_t>(d) * 3 + (y_tau ? (y ? 2 : 1) : 0);
    }
    double sum() const { return p[0] + p[1] + p[2] + p[3] + p[4] + p[5]; }
};

/// Column-name metadata plus contiguous row-major storage for the three
/// covariate roles. Records can be appended individually or the matrices
/// filled in bulk; y <= y_tau is enforced on append.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<std::string> x1_names, std::vector<std::string> x2_names,
            std::vector<std::string> z_names);

    void reserve(std::size_t n);
    void append(const ImpressionRecord& rec);
    /// Unchecked fast-path append used by the simulator and parser.
    void append_unchecked(std::uint8_t d, std::uint8_t y_tau, std::uint8_t y,
                          std::span<const double> x1, std::span<const double> x2,
                          std::span<const double> z);

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }
    std::size_t k1() const { return x1_names_.size(); }
    std::size_t k2() const { return x2_names_.size(); }
    std::size_t kz() const { return z_names_.size(); }

    std::uint8_t d(std::size_t i) const { return d_[i]; }
    std::uint8_t y_tau(std::size_t i) const { return ytau_[i]; }
    std::uint8_t y(std::size_t i) const { return y_[i]; }
    std::span<const double> x1_row(std::size_t i) const {
        return {x1_.data() + i * k1(), k1()};
    }
    std::span<const double> x2_row(std::size_t i) const {
        return {x2_.data() + i * k2(), k2()};
    }
    std::span<const double> z_row(std::size_t i) const {
        return {z_.data() + i * kz(), kz()};
    }
    ImpressionRecord record(std::size_t i) const;

    const std::vector<std::string>& x1_names() const { return x1_names_; }
    const std::vector<std::string>& x2_names() const { return x2_names_; }
    const std::vector<std::string>& z_names() const { return z_names_; }

    std::size_t n_treated() const;

    /// Flat parameter names matching ParameterSet ordering, e.g.
    /// "gamma:const", ..., "alpha1:base", ..., "beta:volume", "alpha2", ...
    std::vector<std::string> parameter_names() const;

private:
    std::size_t n_ = 0;
    std::vector<std::string> x1_names_, x2_names_, z_names_;
    std::vector<double> x1_, x2_, z_;
    std::vector<std::uint8_t> d_, ytau_, y_;
};

} // namespace adsel
