// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "oracles.hpp"
#include "rabiforge/models.hpp"

using namespace rabiforge;

namespace {
std::map<std::string, double> coefficient_map(const PauliSum& sum) {
    std::map<std::string, double> out;
    for (const PauliTerm& t : sum.terms()) out[t.axes_string()] = t.coefficient;
    return out;
}
}  // namespace

TEST_CASE("encoded JCM at the reference parameters") {
    ModelSpec spec;  // S=1/2, omega=2, Omega=10
    const EncodedModel model = encode(spec);
    const auto coeffs = coefficient_map(model.hamiltonian);
    CHECK(coeffs.at("ZI") == doctest::Approx(1.0));
    CHECK(coeffs.at("IZ") == doctest::Approx(1.0));
    // Omega/(4 sqrt(2S)): fixes the single-excitation gap at Omega and the
    // revival law at cos^2(Omega t / 2).
    CHECK(coeffs.at("XX") == doctest::Approx(2.5));
    CHECK(coeffs.at("YY") == doctest::Approx(2.5));
    // system offset = field (omega S) + atom (omega n/2) zero-references
    CHECK(model.hamiltonian.identity_offset() == doctest::Approx(2.0));
}

TEST_CASE("TCM interaction carries the explicit minus sign") {
    ModelSpec spec;
    spec.kind = ModelKind::TCM;
    spec.n_atoms = 2;
    const auto coeffs = coefficient_map(encode(spec).hamiltonian);
    CHECK(coeffs.at("XXI") == doctest::Approx(-2.5));
    CHECK(coeffs.at("YIY") == doctest::Approx(-2.5));

    spec.tcm_positive_coupling = true;
    const auto flipped = coefficient_map(encode(spec).hamiltonian);
    CHECK(flipped.at("XXI") == doctest::Approx(2.5));
}

TEST_CASE("detuned model at resonance reduces to the JCM") {
    ModelSpec detuned;
    detuned.kind = ModelKind::DetunedJCM;
    detuned.omega_atom = detuned.omega;
    const PauliSum a = encode(detuned).hamiltonian;
    const PauliSum b = encode(ModelSpec{}).hamiltonian;
    REQUIRE(a.terms().size() == b.terms().size());
    for (std::size_t k = 0; k < a.terms().size(); ++k) {
        CHECK(a.terms()[k].axes == b.terms()[k].axes);
        CHECK(a.terms()[k].coefficient == doctest::Approx(b.terms()[k].coefficient));
    }
    CHECK(a.identity_offset() == doctest::Approx(b.identity_offset()));
}

TEST_CASE("detuning shifts the atom Z weight") {
    ModelSpec detuned;
    detuned.kind = ModelKind::DetunedJCM;
    detuned.omega_atom = detuned.omega + 1.0;
    const auto coeffs = coefficient_map(encode(detuned).hamiltonian);
    CHECK(coeffs.at("IZ") == doctest::Approx(detuned.omega_atom / 2.0));
    CHECK(coeffs.at("ZI") == doctest::Approx(detuned.omega / 2.0));
}

TEST_CASE("TCM with fewer than two atoms is rejected") {
    ModelSpec spec;
    spec.kind = ModelKind::TCM;
    spec.n_atoms = 1;
    CHECK_THROWS_AS(encode(spec), std::invalid_argument);
}

TEST_CASE("initial state puts the field at |0> and every atom at |1>") {
    CHECK(std::abs(initial_state(ModelSpec{}).amp[1] - cx{1.0, 0.0}) < 1e-15);  // |01>
    ModelSpec tcm;
    tcm.kind = ModelKind::TCM;
    tcm.n_atoms = 2;
    const StateVector s = initial_state(tcm);
    CHECK(std::abs(s.amp[3] - cx{1.0, 0.0}) < 1e-15);  // |011>
    CHECK(s.norm2() == doctest::Approx(1.0));
}

TEST_CASE("analytic population basics") {
    ModelSpec spec;
    CHECK(analytic_population(spec, 0.0) == doctest::Approx(1.0));
    CHECK(analytic_population(spec, std::numbers::pi / 10.0) ==
          doctest::Approx(0.0).epsilon(1e-12));

    ModelSpec tcm;
    tcm.kind = ModelKind::TCM;
    tcm.n_atoms = 2;
    // frequency ratio sqrt(2) ~ 1.41 (the reported numerical fit was 1.40):
    // the n=2 revival period is shorter by exactly sqrt(2).
    const double p1 = 2.0 * std::numbers::pi / 10.0;
    CHECK(analytic_population(tcm, p1 / std::sqrt(2.0)) == doctest::Approx(1.0));
}

TEST_CASE("analytic population is periodic with period 2pi/(sqrt(n) Omega)") {
    ModelSpec tcm;
    tcm.kind = ModelKind::TCM;
    tcm.n_atoms = 3;
    const double period = 2.0 * std::numbers::pi / (std::sqrt(3.0) * tcm.coupling);
    for (double t : {0.05, 0.31, 0.47})
        CHECK(std::abs(analytic_population(tcm, t) - analytic_population(tcm, t + period)) <
              1e-12);
}

TEST_CASE("analytic population is unsupported for the detuned model") {
    ModelSpec detuned;
    detuned.kind = ModelKind::DetunedJCM;
    CHECK_THROWS_AS(analytic_population(detuned, 0.1), std::invalid_argument);
}

TEST_CASE("JCM commutes with the excitation number operator") {
    const EncodedModel model = encode(ModelSpec{});
    const Eigen::MatrixXcd h = matrix_of(model.hamiltonian, 2);
    const PauliSum quanta =
        canonicalize({PauliTerm(0.5, "ZI"), PauliTerm(0.5, "IZ")});
    const Eigen::MatrixXcd n_op = matrix_of(quanta, 2);
    CHECK((h * n_op - n_op * h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("observable set decomposes as system = atom + field + interaction") {
    for (int atoms : {1, 2}) {
        ModelSpec spec;
        if (atoms == 2) {
            spec.kind = ModelKind::TCM;
            spec.n_atoms = 2;
        }
        const EncodedModel model = encode(spec);
        const int n = spec.n_qubits();
        const Eigen::MatrixXcd residue = matrix_of(model.observables.system, size_t(n)) -
                                         matrix_of(model.observables.atom, size_t(n)) -
                                         matrix_of(model.observables.field, size_t(n));
        // residue must be exactly the interaction part: XX+YY structure only
        const double g = spec.coupling / (4.0 * std::sqrt(2.0 * spec.spin));
        std::vector<PauliTerm> interaction;
        const double sign = spec.kind == ModelKind::TCM ? -1.0 : 1.0;
        for (int a = 1; a < n; ++a) {
            std::vector<Pauli> xx(size_t(n), Pauli::I), yy(size_t(n), Pauli::I);
            xx[0] = Pauli::X;
            xx[size_t(a)] = Pauli::X;
            yy[0] = Pauli::Y;
            yy[size_t(a)] = Pauli::Y;
            interaction.emplace_back(sign * g, xx);
            interaction.emplace_back(sign * g, yy);
        }
        const Eigen::MatrixXcd expected = matrix_of(canonicalize(interaction), size_t(n));
        CHECK((residue - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("atom and field observables read zero on their reference configurations") {
    const EncodedModel model = encode(ModelSpec{});
    const StateVector init = initial_state(ModelSpec{});
    CHECK(expectation(init, model.observables.atom) == doctest::Approx(0.0));
    // full transfer configuration |10>
    const StateVector flipped = StateVector::basis_state(2, 2);
    CHECK(expectation(flipped, model.observables.field) == doctest::Approx(0.0));
}

TEST_CASE("measure_energies shot mode reuses the Hamiltonian term estimates") {
    ModelSpec spec;
    const EncodedModel model = encode(spec);
    std::mt19937_64 rng(31);
    const StateVector psi = oracles::random_state(2, rng);

    const EnergyReadout exact_readout = measure_energies(psi, model, Measurement::exact());
    // JCM: 4 Pauli batches + 1 identity batch
    CHECK(exact_readout.batches == 5);

    const EnergyReadout sampled =
        measure_energies(psi, model, Measurement::with_shots(40000, 9));
    CHECK(sampled.batches == 5);
    CHECK(std::abs(sampled.system - exact_readout.system) < 0.5);
    CHECK(std::abs(sampled.atom - exact_readout.atom) < 0.3);
    // identical seeds give identical readouts
    const EnergyReadout again =
        measure_energies(psi, model, Measurement::with_shots(40000, 9));
    CHECK(again.system == sampled.system);
}
