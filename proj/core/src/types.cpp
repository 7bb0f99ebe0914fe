#include "adsel/types.hpp"

#include <algorithm>
#include <stdexcept>

#include "adsel/clayton.hpp"

namespace adsel {

std::vector<double> ParameterSet::to_flat() const {
    std::vector<double> flat;
    flat.reserve(flat_size());
    flat.insert(flat.end(), gamma.begin(), gamma.end());
    flat.insert(flat.end(), alpha1.begin(), alpha1.end());
    flat.insert(flat.end(), beta.begin(), beta.end());
    flat.push_back(alpha2);
    flat.push_back(w1);
    flat.push_back(w2);
    flat.push_back(theta_tilde);
    return flat;
}

void ParameterSet::assign_flat(std::span<const double> flat) {
    if (flat.size() != flat_size()) {
        throw std::invalid_argument("ParameterSet::assign_flat: size mismatch");
    }
    std::size_t pos = 0;
    std::copy_n(flat.begin() + pos, gamma.size(), gamma.begin());
    pos += gamma.size();
    std::copy_n(flat.begin() + pos, alpha1.size(), alpha1.begin());
    pos += alpha1.size();
    std::copy_n(flat.begin() + pos, beta.size(), beta.begin());
    pos += beta.size();
    alpha2 = flat[pos++];
    w1 = flat[pos++];
    w2 = flat[pos++];
    theta_tilde = flat[pos++];
}

ParameterSet ParameterSet::from_flat(std::span<const double> flat, std::size_t k1,
                                     std::size_t kz, std::size_t k2) {
    ParameterSet p;
    p.gamma.resize(k1);
    p.alpha1.resize(kz);
    p.beta.resize(k2);
    p.assign_flat(flat);
    return p;
}

double ParameterSet::theta() const {
    return theta_transform(theta_tilde).theta;
}

Dataset::Dataset(std::vector<std::string> x1_names, std::vector<std::string> x2_names,
                 std::vector<std::string> z_names)
    : x1_names_(std::move(x1_names)), x2_names_(std::move(x2_names)),
      z_names_(std::move(z_names)) {}

void Dataset::reserve(std::size_t n) {
    x1_.reserve(n * k1());
    x2_.reserve(n * k2());
    z_.reserve(n * kz());
    d_.reserve(n);
    ytau_.reserve(n);
    y_.reserve(n);
}

void Dataset::append(const ImpressionRecord& rec) {
    if (rec.y > rec.y_tau) {
        throw std::invalid_argument("Dataset::append: record violates y <= y_tau");
    }
    if (rec.x1.size() != k1() || rec.x2.size() != k2() || rec.z.size() != kz()) {
        throw std::invalid_argument("Dataset::append: covariate dimension mismatch");
    }
    append_unchecked(rec.d, rec.y_tau, rec.y, rec.x1, rec.x2, rec.z);
}

void Dataset::append_unchecked(std::uint8_t d, std::uint8_t y_tau, std::uint8_t y,
                               std::span<const double> x1, std::span<const double> x2,
                               std::span<const double> z) {
    x1_.insert(x1_.end(), x1.begin(), x1.end());
    x2_.insert(x2_.end(), x2.begin(), x2.end());
    z_.insert(z_.end(), z.begin(), z.end());
    d_.push_back(d);
    ytau_.push_back(y_tau);
    y_.push_back(y);
    ++n_;
}

ImpressionRecord Dataset::record(std::size_t i) const {
    ImpressionRecord rec;
    rec.d = d_[i];
    rec.y_tau = ytau_[i];
    rec.y = y_[i];
    auto r1 = x1_row(i);
    auto r2 = x2_row(i);
    auto rz = z_row(i);
    rec.x1.assign(r1.begin(), r1.end());
    rec.x2.assign(r2.begin(), r2.end());
    rec.z.assign(rz.begin(), rz.end());
    return rec;
}

std::size_t Dataset::n_treated() const {
    std::size_t k = 0;
    for (auto v : d_) k += v;
    return k;
}

std::vector<std::string> Dataset::parameter_names() const {
    std::vector<std::string> names;
    names.reserve(k1() + kz() + k2() + 4);
    for (const auto& n : x1_names_) names.push_back("gamma:" + n);
    for (const auto& n : z_names_) names.push_back("alpha1:" + n);
    for (const auto& n : x2_names_) names.push_back("beta:" + n);
    names.push_back("alpha2");
    names.push_back("w1");
    names.push_back("w2");
    names.push_back("theta_tilde");
    return names;
}

} // namespace adsel
