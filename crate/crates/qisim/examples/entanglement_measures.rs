//! The measures on reference states: concurrence and tangle for two qubits,
//! pairwise tangles and the three-tangle for three.

use num_complex::Complex64;
use qisim::density::reduced_density_matrix;
use qisim::measures::{concurrence, fidelity_mixed, pairwise_tangles, tangle, three_tangle};
use qisim::{BasisLabel, DensityMatrix, PureState, Register};

fn atoms(bits: &[&[u8]], amps: &[f64]) -> PureState {
    let terms: Vec<_> = bits
        .iter()
        .zip(amps)
        .map(|(b, &a)| {
            (BasisLabel::new(b.to_vec(), vec![], vec![]).unwrap(), Complex64::new(a, 0.0))
        })
        .collect();
    PureState::from_terms(bits[0].len(), 0, terms).unwrap()
}

fn main() -> Result<(), qisim::Error> {
    let r = std::f64::consts::FRAC_1_SQRT_2;

    // Two qubits: the Bell pair is maximally entangled, the tilted pair
    // interpolates as |sin 2phi|.
    let bell = atoms(&[&[0, 0], &[1, 1]], &[r, r]);
    let rho = reduced_density_matrix(&bell, &[Register::Atom(0), Register::Atom(1)])?;
    println!("Bell pair: concurrence {:.6}, tangle {:.6}", concurrence(&rho)?, tangle(&rho)?);

    let phi = std::f64::consts::PI / 8.0;
    let tilted = atoms(&[&[0, 0], &[1, 1]], &[phi.cos(), phi.sin()]);
    let rho = reduced_density_matrix(&tilted, &[Register::Atom(0), Register::Atom(1)])?;
    println!(
        "tilted pair (phi = pi/8): concurrence {:.6}, |sin 2phi| = {:.6}",
        concurrence(&rho)?,
        (2.0 * phi).sin().abs()
    );

    // Three qubits: the shared-excitation state is all pairwise
    // entanglement, the GHZ state all three-way.
    let w = atoms(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]], &[1.0 / 3f64.sqrt(); 3]);
    let pairs = pairwise_tangles(&w)?;
    println!(
        "W state: pairwise tangles {:.6} {:.6} {:.6} (4/9 = {:.6}), three-tangle {:.2e}",
        pairs.tangle_12,
        pairs.tangle_13,
        pairs.tangle_23,
        4.0 / 9.0,
        three_tangle(&w)?
    );

    let ghz = atoms(&[&[0, 0, 0], &[1, 1, 1]], &[r, r]);
    let pairs = pairwise_tangles(&ghz)?;
    println!(
        "GHZ state: pairwise tangles {:.2e} {:.2e} {:.2e}, three-tangle {:.6}",
        pairs.tangle_12,
        pairs.tangle_13,
        pairs.tangle_23,
        three_tangle(&ghz)?
    );

    // Mixed-state fidelity: the classical half-half mixture of |00> and
    // |11> keeps only half the Bell overlap, sqrt(1/2).
    let half = |b: &[u8]| {
        DensityMatrix::from_pure(&atoms(&[b], &[1.0])).map(|rho| (0.5, rho))
    };
    let classical = DensityMatrix::mix(&[half(&[0, 0])?, half(&[1, 1])?])?;
    println!(
        "F(classical 00/11 mixture vs Bell) = {:.6}, 1/sqrt(2) = {:.6}",
        fidelity_mixed(&classical, &bell)?,
        r
    );
    Ok(())
}
