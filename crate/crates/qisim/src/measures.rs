//! Entanglement and overlap measures: fidelity, concurrence, tangle and the
//! three-tangle.
//!
//! Concurrence follows the spin-flip construction: with the flipped matrix
//! rho_tilde = (Y x Y) rho* (Y x Y), the concurrence is
//! max(0, l1 - l2 - l3 - l4) where l_i are the descending square roots of the
//! eigenvalues of sqrt(rho) rho_tilde sqrt(rho). That product is Hermitian
//! and positive semidefinite, so the whole computation stays inside the
//! Hermitian eigensolver; no general-matrix spectrum is ever needed.

use crate::density::{reduced_density_matrix, DensityMatrix};
use crate::label::Register;
use crate::linalg::{hermitian_eigensystem, matrix_sqrt_psd, CMatrix};
use crate::state::PureState;
use crate::{tol, Error, Result};
use num_complex::Complex64;

/// Pair tangles of a three-atom state, named by 1-based atom pairs to match
/// the sweep table columns.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MeasureComponents {
    pub tangle_12: f64,
    pub tangle_13: f64,
    pub tangle_23: f64,
}

/// Entanglement numbers attached to one scheme run, alongside the fidelity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureResult {
    /// Pair tangle of a two-atom state.
    Tangle(f64),
    /// The three pair tangles of a three-atom state.
    PairwiseTangles(MeasureComponents),
    /// Residual three-way entanglement of a three-atom state.
    ThreeTangle(f64),
    /// No entanglement measure beyond the fidelity itself.
    FidelityOnly,
}

/// Overlap magnitude |<a|b>| of two pure states on the same registers.
pub fn fidelity_pure(a: &PureState, b: &PureState) -> Result<f64> {
    Ok(a.inner(b)?.norm())
}

/// Fidelity sqrt(<t|rho|t>) of a density matrix against a pure target.
///
/// The matrix is used as given, without renormalisation, so a subnormalised
/// input shows up as a lowered fidelity rather than being hidden.
pub fn fidelity_mixed(rho: &DensityMatrix, target: &PureState) -> Result<f64> {
    let trace = rho.trace();
    if !(-1e-12..=1.0 + 1e-9).contains(&trace) {
        return Err(Error::BadTrace(trace));
    }
    let coeffs: Vec<Complex64> = rho.basis().iter().map(|l| target.amplitude(l)).collect();
    let mut overlap = Complex64::ZERO;
    for (i, ci) in coeffs.iter().enumerate() {
        for (j, cj) in coeffs.iter().enumerate() {
            overlap += ci.conj() * rho.matrix()[(i, j)] * cj;
        }
    }
    Ok(overlap.re.max(0.0).sqrt())
}

/// Concurrence of a two-qubit density matrix.
///
/// The input is renormalised by its trace first, so conditioned states can be
/// passed in with their raw weight. The basis must be the four logical labels
/// in their natural order.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 || rho.basis().iter().any(|l| !l.is_logical()) {
        return Err(Error::BadDimension {
            got: rho.dim(),
            reason: "concurrence is defined on the full two-qubit logical basis",
        });
    }
    let trace = rho.trace();
    if trace <= 1e-12 {
        return Err(Error::BadTrace(trace));
    }
    let normalised = rho.matrix().scaled(Complex64::new(1.0 / trace, 0.0));

    // Y x Y in the ordered product basis is the antidiagonal (-1, 1, 1, -1).
    let mut yy = CMatrix::zeros(4);
    yy[(0, 3)] = Complex64::new(-1.0, 0.0);
    yy[(1, 2)] = Complex64::ONE;
    yy[(2, 1)] = Complex64::ONE;
    yy[(3, 0)] = Complex64::new(-1.0, 0.0);
    let flipped = yy.mul(&normalised.conjugated()).mul(&yy);

    let root = matrix_sqrt_psd(&normalised)?;
    let product = root.mul(&flipped).mul(&root);
    let (values, _) = hermitian_eigensystem(&product)?;
    if let Some(&worst) = values
        .iter()
        .filter(|&&l| l < tol::PSD_FLOOR)
        .min_by(|a, b| a.partial_cmp(b).unwrap())
    {
        return Err(Error::NotPositiveSemidefinite(worst));
    }
    // Square-rooting eigenvalues that are only rounding noise would turn
    // eps-sized errors into sqrt(eps)-sized ones, so zero them first.
    let floor = values[0].max(0.0) * tol::SPECTRUM_RELATIVE_FLOOR;
    let l: Vec<f64> = values.iter().map(|&v| if v <= floor { 0.0 } else { v.sqrt() }).collect();
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Tangle, the squared concurrence.
pub fn tangle(rho: &DensityMatrix) -> Result<f64> {
    concurrence(rho).map(|c| c * c)
}

/// Pair tangles of a three-atom pure state, for the atom pairs (1,2), (1,3)
/// and (2,3) in 1-based labelling.
pub fn pairwise_tangles(state: &PureState) -> Result<MeasureComponents> {
    check_three_atoms(state)?;
    let pair = |a: usize, b: usize| -> Result<f64> {
        tangle(&reduced_density_matrix(state, &[Register::Atom(a), Register::Atom(b)])?)
    };
    Ok(MeasureComponents { tangle_12: pair(0, 1)?, tangle_13: pair(0, 2)?, tangle_23: pair(1, 2)? })
}

/// Residual three-way entanglement of a three-atom pure state:
/// 4 det(rho_1) minus the two pair tangles seen from atom 1. The input is
/// normalised internally. Values in `[THREE_TANGLE_FLOOR, 0)` are rounding
/// noise and clamp to zero; anything lower is reported as an error.
pub fn three_tangle(state: &PureState) -> Result<f64> {
    check_three_atoms(state)?;
    let state = state.normalised()?;
    let rho_1 = reduced_density_matrix(&state, &[Register::Atom(0)])?;
    let m = rho_1.matrix();
    let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    let tau_12 = tangle(&reduced_density_matrix(&state, &[Register::Atom(0), Register::Atom(1)])?)?;
    let tau_13 = tangle(&reduced_density_matrix(&state, &[Register::Atom(0), Register::Atom(2)])?)?;
    let value = 4.0 * det - tau_12 - tau_13;
    if value < tol::THREE_TANGLE_FLOOR {
        return Err(Error::NegativeThreeTangle(value));
    }
    Ok(value.max(0.0))
}

fn check_three_atoms(state: &PureState) -> Result<()> {
    if state.num_atoms() != 3 || state.num_photons() != 0 {
        return Err(Error::InvalidConfig(format!(
            "three-atom measures need exactly 3 atoms and no photons, got {} atoms and {} photons",
            state.num_atoms(),
            state.num_photons()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::BasisLabel;
    use crate::linalg::cplx;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn two_atom_state(terms: &[(&[u8; 2], f64)]) -> PureState {
        PureState::from_terms(
            2,
            0,
            terms
                .iter()
                .map(|(bits, amp)| (BasisLabel::logical(*bits, &[]).unwrap(), cplx(*amp, 0.0)))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn three_atom_state(terms: &[(&[u8; 3], f64)]) -> PureState {
        PureState::from_terms(
            3,
            0,
            terms
                .iter()
                .map(|(bits, amp)| (BasisLabel::logical(*bits, &[]).unwrap(), cplx(*amp, 0.0)))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn bell() -> PureState {
        two_atom_state(&[(&[0, 0], FRAC_1_SQRT_2), (&[1, 1], FRAC_1_SQRT_2)])
    }

    #[test]
    fn bell_state_is_maximally_entangled() {
        let rho = DensityMatrix::from_pure(&bell()).unwrap();
        assert!((concurrence(&rho).unwrap() - 1.0).abs() < 1e-9);
        assert!((tangle(&rho).unwrap() - 1.0).abs() < 1e-9);
        assert!((fidelity_pure(&bell(), &bell()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_state_has_zero_concurrence() {
        let rho = DensityMatrix::from_pure(&two_atom_state(&[(&[1, 0], 1.0)])).unwrap();
        assert!(concurrence(&rho).unwrap().abs() < 1e-9);
    }

    #[test]
    fn partially_entangled_pair_matches_sine() {
        // cos(phi)|00> + sin(phi)|11> has concurrence sin(2 phi).
        let phi = PI / 6.0;
        let state = two_atom_state(&[(&[0, 0], phi.cos()), (&[1, 1], phi.sin())]);
        let rho = DensityMatrix::from_pure(&state).unwrap();
        let c = concurrence(&rho).unwrap();
        assert!((c - 0.8660254037844386).abs() < 1e-9, "got {c}");
    }

    #[test]
    fn concurrence_renormalises_subweight_input() {
        let state = bell().scaled(cplx(0.5, 0.0));
        let rho = DensityMatrix::from_pure(&state).unwrap();
        assert!((rho.trace() - 0.25).abs() < 1e-12);
        assert!((concurrence(&rho).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn werner_mixture_concurrence() {
        // p |bell><bell| + (1-p)/4 identity has concurrence max(0, (3p-1)/2).
        let basis: Vec<DensityMatrix> = [[0u8, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|bits| DensityMatrix::from_pure(&two_atom_state(&[(bits, 1.0)])).unwrap())
            .collect();
        let pure = DensityMatrix::from_pure(&bell()).unwrap();
        for (p, expect) in [(0.6, 0.4), (0.2, 0.0), (1.0 / 3.0, 0.0)] {
            let mut parts = vec![(p, pure.clone())];
            for b in &basis {
                parts.push(((1.0 - p) / 4.0, b.clone()));
            }
            let rho = DensityMatrix::mix(&parts).unwrap();
            let c = concurrence(&rho).unwrap();
            assert!((c - expect).abs() < 1e-9, "p = {p}: got {c}, want {expect}");
        }
    }

    #[test]
    fn mixed_fidelity_against_known_matrices() {
        let basis: Vec<DensityMatrix> = [[0u8, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|bits| DensityMatrix::from_pure(&two_atom_state(&[(bits, 1.0)])).unwrap())
            .collect();
        let uniform =
            DensityMatrix::mix(&basis.iter().map(|b| (0.25, b.clone())).collect::<Vec<_>>()).unwrap();
        assert!((fidelity_mixed(&uniform, &bell()).unwrap() - 0.5).abs() < 1e-12);

        let classical =
            DensityMatrix::mix(&[(0.5, basis[0].clone()), (0.5, basis[3].clone())]).unwrap();
        assert!((fidelity_mixed(&classical, &bell()).unwrap() - FRAC_1_SQRT_2).abs() < 1e-12);

        let exact = DensityMatrix::from_pure(&bell()).unwrap();
        assert!((fidelity_mixed(&exact, &bell()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn w_state_pair_tangles_are_four_ninths() {
        let w = three_atom_state(&[
            (&[1, 0, 0], 1.0 / 3f64.sqrt()),
            (&[0, 1, 0], 1.0 / 3f64.sqrt()),
            (&[0, 0, 1], 1.0 / 3f64.sqrt()),
        ]);
        let pairs = pairwise_tangles(&w).unwrap();
        for t in [pairs.tangle_12, pairs.tangle_13, pairs.tangle_23] {
            assert!((t - 4.0 / 9.0).abs() < 1e-9, "got {t}");
        }
        // All the three-way entanglement of the state is pairwise.
        assert!(three_tangle(&w).unwrap().abs() < 1e-9);
    }

    #[test]
    fn ghz_family_three_tangle() {
        let ghz = three_atom_state(&[(&[0, 0, 0], FRAC_1_SQRT_2), (&[1, 1, 1], FRAC_1_SQRT_2)]);
        assert!((three_tangle(&ghz).unwrap() - 1.0).abs() < 1e-9);
        let pairs = pairwise_tangles(&ghz).unwrap();
        assert!(pairs.tangle_12.abs() < 1e-9);

        // cos(phi)|000> + sin(phi)|111> carries three-tangle sin^2(2 phi).
        let phi = PI / 8.0;
        let tilted = three_atom_state(&[(&[0, 0, 0], phi.cos()), (&[1, 1, 1], phi.sin())]);
        assert!((three_tangle(&tilted).unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn three_atom_measures_reject_other_shapes() {
        assert!(matches!(three_tangle(&bell()), Err(Error::InvalidConfig(_))));
        assert!(matches!(pairwise_tangles(&bell()), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn concurrence_rejects_non_two_qubit_bases() {
        let one_atom = PureState::product(&[(Complex64::ONE, Complex64::ZERO)], &[]).unwrap();
        let rho = DensityMatrix::from_pure(&one_atom).unwrap();
        assert!(matches!(concurrence(&rho), Err(Error::BadDimension { .. })));
    }
}
