#include "layeremit/fresnel.hpp"

#include <stdexcept>

namespace layeremit {

Complex beta_branch(Complex k2, Complex k_par) {
    Complex w = k2 - k_par * k_par;
    // Normalize a -0.0 imaginary part so that lossless media on the real
    // axis land on the Im beta >= 0 side of the cut.
    if (w.imag() == 0.0) w = Complex(w.real(), 0.0);
    Complex beta = std::sqrt(w);
    if (beta.imag() < 0.0) beta = -beta;
    return beta;
}

TransverseState TransverseState::make(const Stack& stack, double omega, Complex k_par) {
    const std::size_t regions = stack.layer_count() + 2;
    TransverseState st;
    st.omega = omega;
    st.k_par = k_par;
    st.eps.resize(regions);
    st.beta.resize(regions);
    const double w2 = omega * omega;
    for (std::size_t i = 0; i < regions; ++i) {
        st.eps[i] = eval_permittivity(stack.material(i), omega);
        st.beta[i] = beta_branch(st.eps[i] * w2, k_par);
    }
    return st;
}

Complex fresnel_interface(const TransverseState& state, std::size_t from, std::size_t to,
                          Polarization pol) {
    const Complex bf = state.beta[from];
    const Complex bt = state.beta[to];
    if (pol == Polarization::TE) {
        const Complex denom = bf + bt;
        if (denom == Complex(0.0, 0.0))
            throw std::runtime_error("fresnel_interface: degenerate TE denominator");
        return (bf - bt) / denom;
    }
    const Complex ef = state.eps[from];
    const Complex et = state.eps[to];
    const Complex denom = et * bf + ef * bt;
    if (denom == Complex(0.0, 0.0))
        throw std::runtime_error("fresnel_interface: degenerate TM denominator");
    return (et * bf - ef * bt) / denom;
}

PolarizedReflection total_reflection_both(const Stack& stack, std::size_t j, Side side,
                                          const TransverseState& state) {
    const std::size_t n_layers = stack.layer_count();
    if (j < 1 || j > n_layers) throw std::invalid_argument("total_reflection: bad layer index");
    const Complex I(0.0, 1.0);

    auto step = [&](PolarizedReflection r, std::size_t from, std::size_t to, Complex phase) {
        const Complex rs = fresnel_interface(state, from, to, Polarization::TE);
        const Complex rp = fresnel_interface(state, from, to, Polarization::TM);
        return PolarizedReflection{(rs + r.te * phase) / (1.0 + rs * r.te * phase),
                                   (rp + r.tm * phase) / (1.0 + rp * r.tm * phase)};
    };

    if (side == Side::Above) {
        PolarizedReflection r{fresnel_interface(state, n_layers, n_layers + 1, Polarization::TE),
                              fresnel_interface(state, n_layers, n_layers + 1, Polarization::TM)};
        for (std::size_t n = n_layers - 1; n >= j; --n) {
            const Complex phase = std::exp(2.0 * I * state.beta[n + 1] * stack.thickness(n + 1));
            r = step(r, n, n + 1, phase);
            if (n == j) break;  // j may be 1; avoid unsigned wrap
        }
        return r;
    }

    PolarizedReflection r{fresnel_interface(state, 1, 0, Polarization::TE),
                          fresnel_interface(state, 1, 0, Polarization::TM)};
    for (std::size_t n = 2; n <= j; ++n) {
        const Complex phase = std::exp(2.0 * I * state.beta[n - 1] * stack.thickness(n - 1));
        r = step(r, n, n - 1, phase);
    }
    return r;
}

Complex total_reflection(const Stack& stack, std::size_t j, Side side,
                         const TransverseState& state, Polarization pol) {
    const PolarizedReflection r = total_reflection_both(stack, j, side, state);
    return pol == Polarization::TE ? r.te : r.tm;
}

}  // namespace layeremit
