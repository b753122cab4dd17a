#include "fibersim/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fibersim {

FockSpace::FockSpace(std::size_t n_modes, std::size_t cutoff)
    : n_modes_(n_modes), cutoff_(cutoff) {
    if (n_modes == 0) throw std::invalid_argument("FockSpace needs at least one mode");
    double d = 1.0;
    for (std::size_t i = 0; i < n_modes; ++i) d *= static_cast<double>(cutoff + 1);
    if (d > 1e8) throw std::invalid_argument("FockSpace dimension too large");
    dim_ = 1;
    for (std::size_t i = 0; i < n_modes; ++i) dim_ *= static_cast<Eigen::Index>(cutoff + 1);
}

std::vector<std::size_t> FockSpace::occupation(Eigen::Index index) const {
    if (index < 0 || index >= dim_) throw std::out_of_range("basis index out of range");
    std::vector<std::size_t> occ(n_modes_);
    const Eigen::Index base = static_cast<Eigen::Index>(cutoff_ + 1);
    for (std::size_t m = n_modes_; m-- > 0;) {
        occ[m] = static_cast<std::size_t>(index % base);
        index /= base;
    }
    return occ;
}

Eigen::Index FockSpace::index(const std::vector<std::size_t>& occupation) const {
    if (occupation.size() != n_modes_)
        throw std::invalid_argument("occupation tuple has wrong length");
    Eigen::Index idx = 0;
    for (std::size_t m = 0; m < n_modes_; ++m) {
        if (occupation[m] > cutoff_) throw std::out_of_range("occupation exceeds cutoff");
        idx = idx * static_cast<Eigen::Index>(cutoff_ + 1) + static_cast<Eigen::Index>(occupation[m]);
    }
    return idx;
}

FockStateVector basis_state(const FockSpace& space, const std::vector<std::size_t>& occupation) {
    FockStateVector st{space, Eigen::VectorXcd::Zero(space.dim())};
    st.amplitudes(space.index(occupation)) = 1.0;
    return st;
}

Operator lowering_operator(const FockSpace& space, std::size_t mode) {
    if (mode >= space.n_modes()) throw std::out_of_range("mode index out of range");
    Operator a = Operator::Zero(space.dim(), space.dim());
    // Stride of `mode` in the row-major-like basis ordering.
    Eigen::Index stride = 1;
    for (std::size_t m = space.n_modes() - 1; m > mode; --m)
        stride *= static_cast<Eigen::Index>(space.cutoff() + 1);
    for (Eigen::Index idx = 0; idx < space.dim(); ++idx) {
        const Eigen::Index base = static_cast<Eigen::Index>(space.cutoff() + 1);
        const Eigen::Index n = (idx / stride) % base;
        if (n > 0) a(idx - stride, idx) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Operator raising_operator(const FockSpace& space, std::size_t mode) {
    return lowering_operator(space, mode).adjoint();
}

Operator number_operator(const FockSpace& space, std::size_t mode) {
    Operator a = lowering_operator(space, mode);
    return a.adjoint() * a;
}

Operator total_number_operator(const FockSpace& space) {
    Operator n = Operator::Zero(space.dim(), space.dim());
    for (Eigen::Index idx = 0; idx < space.dim(); ++idx) {
        const auto occ = space.occupation(idx);
        std::size_t tot = 0;
        for (auto o : occ) tot += o;
        n(idx, idx) = static_cast<double>(tot);
    }
    return n;
}

CoherentState coherent_state(const FockSpace& space,
                             const std::vector<std::complex<double>>& amplitudes) {
    if (amplitudes.size() != space.n_modes())
        throw std::invalid_argument("need one amplitude per mode");
    const std::size_t c = space.cutoff();
    // Per-mode truncated coefficient vectors e^{-|a|^2/2} a^n / sqrt(n!).
    std::vector<Eigen::VectorXcd> coeffs;
    double captured = 1.0;
    for (auto alpha : amplitudes) {
        Eigen::VectorXcd v(c + 1);
        std::complex<double> term = std::exp(-0.5 * std::norm(alpha));
        double mode_captured = 0.0;
        for (std::size_t n = 0; n <= c; ++n) {
            v(static_cast<Eigen::Index>(n)) = term;
            mode_captured += std::norm(term);
            term *= alpha / std::sqrt(static_cast<double>(n + 1));
        }
        captured *= mode_captured;
        coeffs.push_back(std::move(v));
    }
    FockStateVector st{space, Eigen::VectorXcd::Zero(space.dim())};
    for (Eigen::Index idx = 0; idx < space.dim(); ++idx) {
        const auto occ = space.occupation(idx);
        std::complex<double> amp = 1.0;
        for (std::size_t m = 0; m < occ.size(); ++m)
            amp *= coeffs[m](static_cast<Eigen::Index>(occ[m]));
        st.amplitudes(idx) = amp;
    }
    st.normalize();
    return {std::move(st), 1.0 - captured};
}

namespace {

struct TraceLayout {
    FockSpace kept_space;
    std::vector<Eigen::Index> kept_index;    // per full-basis index
    std::vector<Eigen::Index> traced_index;  // per full-basis index
};

TraceLayout make_layout(const FockSpace& space, std::vector<std::size_t> keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
    std::sort(keep.begin(), keep.end());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= space.n_modes()) throw std::out_of_range("partial_trace: mode out of range");
        if (i > 0 && keep[i] == keep[i - 1])
            throw std::invalid_argument("partial_trace: duplicate mode in keep set");
    }
    std::vector<bool> kept(space.n_modes(), false);
    for (auto m : keep) kept[m] = true;

    TraceLayout layout{FockSpace(keep.size(), space.cutoff()), {}, {}};
    layout.kept_index.resize(static_cast<std::size_t>(space.dim()));
    layout.traced_index.resize(static_cast<std::size_t>(space.dim()));
    const Eigen::Index base = static_cast<Eigen::Index>(space.cutoff() + 1);
    for (Eigen::Index idx = 0; idx < space.dim(); ++idx) {
        const auto occ = space.occupation(idx);
        Eigen::Index ki = 0, ti = 0;
        for (std::size_t m = 0; m < space.n_modes(); ++m) {
            if (kept[m])
                ki = ki * base + static_cast<Eigen::Index>(occ[m]);
            else
                ti = ti * base + static_cast<Eigen::Index>(occ[m]);
        }
        layout.kept_index[static_cast<std::size_t>(idx)] = ki;
        layout.traced_index[static_cast<std::size_t>(idx)] = ti;
    }
    return layout;
}

}  // namespace

DensityMatrix partial_trace(const FockStateVector& state, const std::vector<std::size_t>& keep) {
    const auto layout = make_layout(state.space, keep);
    const Eigen::Index kd = layout.kept_space.dim();
    Eigen::Index td = state.space.dim() / kd;
    // Group amplitudes by traced index, then accumulate outer products.
    Eigen::MatrixXcd grouped = Eigen::MatrixXcd::Zero(kd, td);
    for (Eigen::Index idx = 0; idx < state.space.dim(); ++idx)
        grouped(layout.kept_index[static_cast<std::size_t>(idx)],
                layout.traced_index[static_cast<std::size_t>(idx)]) = state.amplitudes(idx);
    Eigen::MatrixXcd rho = grouped * grouped.adjoint();
    return {layout.kept_space, std::move(rho)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
    const auto layout = make_layout(rho.space, keep);
    const Eigen::Index kd = layout.kept_space.dim();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kd, kd);
    for (Eigen::Index r = 0; r < rho.space.dim(); ++r) {
        for (Eigen::Index c = 0; c < rho.space.dim(); ++c) {
            if (layout.traced_index[static_cast<std::size_t>(r)] !=
                layout.traced_index[static_cast<std::size_t>(c)])
                continue;
            out(layout.kept_index[static_cast<std::size_t>(r)],
                layout.kept_index[static_cast<std::size_t>(c)]) += rho.matrix(r, c);
        }
    }
    return {layout.kept_space, std::move(out)};
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double lambda = es.eigenvalues()(i);
        if (lambda < -1e-10)
            throw std::invalid_argument("density matrix has a significantly negative eigenvalue");
        if (lambda <= 0.0) continue;
        s -= lambda * std::log(lambda);
    }
    return s < 0.0 ? 0.0 : s;
}

std::string state_to_json(const FockStateVector& state) {
    nlohmann::json j;
    j["n_modes"] = state.space.n_modes();
    j["cutoff"] = state.space.cutoff();
    auto amps = nlohmann::json::array();
    for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i)
        amps.push_back({state.amplitudes(i).real(), state.amplitudes(i).imag()});
    j["amplitudes"] = std::move(amps);
    return j.dump(2);
}

FockStateVector state_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("state parse error: ") + e.what());
    }
    FockSpace space(j.at("n_modes").get<std::size_t>(), j.at("cutoff").get<std::size_t>());
    const auto& amps = j.at("amplitudes");
    if (static_cast<Eigen::Index>(amps.size()) != space.dim())
        throw std::invalid_argument("amplitude count does not match space dimension");
    FockStateVector st{space, Eigen::VectorXcd(space.dim())};
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
        const auto& pair = amps[static_cast<std::size_t>(i)];
        st.amplitudes(i) = {pair.at(0).get<double>(), pair.at(1).get<double>()};
    }
    return st;
}

}  // namespace fibersim
