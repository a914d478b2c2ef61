// SPDX-License-Identifier: Apache-2.0
#include "rabiforge/models.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace rabiforge {

namespace {

std::vector<Pauli> single_axis(int n, int q, Pauli p) {
    std::vector<Pauli> axes(size_t(n), Pauli::I);
    axes[size_t(q)] = p;
    return axes;
}

std::vector<Pauli> two_axis(int n, int qa, Pauli pa, int qb, Pauli pb) {
    std::vector<Pauli> axes(size_t(n), Pauli::I);
    axes[size_t(qa)] = pa;
    axes[size_t(qb)] = pb;
    return axes;
}

}  // namespace

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::JCM: return "jcm";
        case ModelKind::TCM: return "tcm";
        case ModelKind::DetunedJCM: return "detuned_jcm";
    }
    return "?";
}

ModelKind model_kind_from_name(const std::string& name) {
    if (name == "jcm") return ModelKind::JCM;
    if (name == "tcm") return ModelKind::TCM;
    if (name == "detuned_jcm") return ModelKind::DetunedJCM;
    throw std::invalid_argument("unknown model kind: " + name);
}

void ModelSpec::validate() const {
    if (n_atoms < 1) throw std::invalid_argument("n_atoms must be >= 1");
    if (kind == ModelKind::TCM && n_atoms < 2)
        throw std::invalid_argument("TCM needs n_atoms >= 2 (use JCM for one atom)");
    if (kind != ModelKind::TCM && n_atoms != 1)
        throw std::invalid_argument("JCM variants have exactly one atom");
    if (!(spin > 0.0) || std::abs(spin * 2 - std::round(spin * 2)) > 1e-12)
        throw std::invalid_argument("spin must be a positive half-integer");
    if (!std::isfinite(omega) || !std::isfinite(coupling) || !std::isfinite(omega_atom))
        throw std::invalid_argument("model frequencies must be finite");
    if (n_qubits() > int(kDenseQubitCap))
        throw std::invalid_argument("register exceeds the dense cap");
}

EncodedModel encode(const ModelSpec& spec) {
    spec.validate();
    const int n = spec.n_qubits();
    const double w = spec.omega;
    const double wa = spec.atom_frequency();
    // Exchange weight from b ~ S_- / sqrt(2S) with standard ladder operators:
    // (Omega/2)(b sigma_+ + h.c.) -> Omega/(4 sqrt(2S)) (XX + YY).
    const double g = spec.coupling / (4.0 * std::sqrt(2.0 * spec.spin));
    const double interaction_sign =
        (spec.kind == ModelKind::TCM && !spec.tcm_positive_coupling) ? -1.0 : 1.0;

    std::vector<PauliTerm> field_terms, atom_terms, interaction_terms;
    field_terms.emplace_back(w / 2.0, single_axis(n, 0, Pauli::Z));
    for (int a = 1; a < n; ++a) {
        atom_terms.emplace_back(wa / 2.0, single_axis(n, a, Pauli::Z));
        interaction_terms.emplace_back(interaction_sign * g,
                                       two_axis(n, 0, Pauli::X, a, Pauli::X));
        interaction_terms.emplace_back(interaction_sign * g,
                                       two_axis(n, 0, Pauli::Y, a, Pauli::Y));
    }

    const double field_offset = w * spec.spin;
    const double atom_offset = wa * spec.n_atoms / 2.0;

    EncodedModel out;
    out.observables.field = canonicalize(field_terms, field_offset);
    out.observables.atom = canonicalize(atom_terms, atom_offset);

    std::vector<PauliTerm> all = field_terms;
    all.insert(all.end(), atom_terms.begin(), atom_terms.end());
    all.insert(all.end(), interaction_terms.begin(), interaction_terms.end());
    out.hamiltonian = canonicalize(all, field_offset + atom_offset);
    out.observables.system = out.hamiltonian;
    return out;
}

StateVector initial_state(const ModelSpec& spec) {
    spec.validate();
    const int n = spec.n_qubits();
    // Field qubit 0 at |0>, atom qubits at |1>; qubit 0 is the MSB.
    std::size_t index = 0;
    for (int a = 1; a < n; ++a) index |= std::size_t(1) << (n - 1 - a);
    return StateVector::basis_state(n, index);
}

double analytic_population(const ModelSpec& spec, double t) {
    spec.validate();
    if (spec.kind == ModelKind::DetunedJCM)
        throw std::invalid_argument("no closed-form population for the detuned model");
    const double c = std::cos(std::sqrt(double(spec.n_atoms)) * spec.coupling * t / 2.0);
    return c * c;
}

EnergyReadout measure_energies(const StateVector& state, const EncodedModel& model,
                               const Measurement& measurement) {
    EnergyReadout out;
    const PauliSum& h = model.hamiltonian;
    out.batches = long(h.terms().size()) + (h.identity_offset() != 0.0 ? 1 : 0);

    if (measurement.is_exact()) {
        out.system = expectation(state, h);
        out.atom = expectation(state, model.observables.atom);
        out.field = expectation(state, model.observables.field);
        return out;
    }

    const std::vector<double> estimates =
        sample_term_expectations(state, h, measurement.shots, measurement.seed);
    std::map<std::string, double> by_axes;
    out.system = h.identity_offset();
    for (std::size_t k = 0; k < estimates.size(); ++k) {
        const PauliTerm& t = h.terms()[k];
        by_axes[t.axes_string()] = estimates[k];
        out.system += t.coefficient * estimates[k];
    }

    long extra = 0;
    auto assemble = [&](const PauliSum& obs) {
        double value = obs.identity_offset();
        for (const PauliTerm& t : obs.terms()) {
            auto it = by_axes.find(t.axes_string());
            double est;
            if (it != by_axes.end()) {
                est = it->second;
            } else {
                // Observable term absent from the Hamiltonian: measure it on
                // its own batch with a seed derived from its position.
                PauliSum lone = canonicalize({PauliTerm(1.0, t.axes)});
                est = sample_expectation(state, lone, measurement.shots,
                                         mix_seed(measurement.seed, 1000 + uint64_t(extra)));
                ++extra;
            }
            value += t.coefficient * est;
        }
        return value;
    };
    out.atom = assemble(model.observables.atom);
    out.field = assemble(model.observables.field);
    out.batches += extra;
    return out;
}

}  // namespace rabiforge
