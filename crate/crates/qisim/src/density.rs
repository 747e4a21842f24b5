//! Density matrices and the partial trace.
//!
//! A [`DensityMatrix`] carries an explicit basis of [`BasisLabel`]s over the
//! registers it describes. Reduction always traces out the scatter-tag
//! environment: tags never appear in a reduced basis, so kept photons may be
//! marked lost without a tag attached. Distinct tags are orthogonal, which is
//! what makes scattered terms contribute only diagonal weight.

use crate::label::{BasisLabel, PhotonSlot, Register, ScatterEvent};
use crate::linalg::{hermitian_eigensystem, CMatrix};
use crate::state::PureState;
use crate::{tol, Amplitude, Error, Result};
use num_complex::Complex64;
use std::collections::{BTreeMap, BTreeSet};

/// Hermitian operator over an explicit label basis.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    num_atoms: usize,
    num_photons: usize,
    basis: Vec<BasisLabel>,
    index: BTreeMap<BasisLabel, usize>,
    mat: CMatrix,
}

impl DensityMatrix {
    /// Rank-one density matrix `|psi><psi|` over all of the state's registers.
    pub fn from_pure(state: &PureState) -> Result<Self> {
        let keep: Vec<Register> = (0..state.num_atoms())
            .map(Register::Atom)
            .chain((0..state.num_photons()).map(Register::Photon))
            .collect();
        reduced_density_matrix(state, &keep)
    }

    pub fn num_atoms(&self) -> usize {
        self.num_atoms
    }

    pub fn num_photons(&self) -> usize {
        self.num_photons
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> Amplitude {
        self.mat[(i, j)]
    }

    /// Position of a label in the basis, if present.
    pub fn find_label(&self, label: &BasisLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    /// Probability-weighted mixture. Bases are merged; weights are taken as
    /// given, so the caller decides whether the result is normalised.
    pub fn mix(parts: &[(f64, DensityMatrix)]) -> Result<Self> {
        let (num_atoms, num_photons) = match parts.first() {
            Some((_, dm)) => (dm.num_atoms, dm.num_photons),
            None => return Err(Error::InvalidConfig("mixture of zero parts".into())),
        };
        let mut labels: BTreeSet<BasisLabel> = BTreeSet::new();
        for (weight, dm) in parts {
            if dm.num_atoms != num_atoms || dm.num_photons != num_photons {
                return Err(Error::SignatureMismatch(
                    format!("{num_atoms} atoms, {num_photons} photons"),
                    format!("{} atoms, {} photons", dm.num_atoms, dm.num_photons),
                ));
            }
            if !weight.is_finite() || *weight < 0.0 {
                return Err(Error::InvalidConfig(format!("mixture weight {weight}")));
            }
            labels.extend(dm.basis.iter().cloned());
        }
        let basis: Vec<BasisLabel> = labels.into_iter().collect();
        let index: BTreeMap<BasisLabel, usize> =
            basis.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let mut mat = CMatrix::zeros(basis.len());
        for (weight, dm) in parts {
            let w = Complex64::new(*weight, 0.0);
            for (i, li) in dm.basis.iter().enumerate() {
                let ti = index[li];
                for (j, lj) in dm.basis.iter().enumerate() {
                    let tj = index[lj];
                    mat[(ti, tj)] += w * dm.mat[(i, j)];
                }
            }
        }
        let out = DensityMatrix { num_atoms, num_photons, basis, index, mat };
        out.validate()?;
        Ok(out)
    }

    /// Copy scaled so the trace is 1.
    pub fn renormalised(&self) -> Result<Self> {
        let tr = self.trace();
        if !(tr > tol::EMPTY_PROJECTION) {
            return Err(Error::BadTrace(tr));
        }
        let mut out = self.clone();
        out.mat = out.mat.scaled(Complex64::new(1.0 / tr, 0.0));
        Ok(out)
    }

    /// Partial trace of this operator down to the kept registers.
    pub fn reduce(&self, keep: &[Register]) -> Result<DensityMatrix> {
        let plan = KeepPlan::new(keep, self.num_atoms, self.num_photons)?;
        let mut decomposed = Vec::with_capacity(self.basis.len());
        for label in &self.basis {
            decomposed.push(plan.split(label));
        }
        let mut labels: BTreeSet<BasisLabel> = plan.logical_basis();
        for (kept, _) in &decomposed {
            labels.insert(kept.clone());
        }
        let basis: Vec<BasisLabel> = labels.into_iter().collect();
        let index: BTreeMap<BasisLabel, usize> =
            basis.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let mut mat = CMatrix::zeros(basis.len());
        for (i, (ki, ti)) in decomposed.iter().enumerate() {
            for (j, (kj, tj)) in decomposed.iter().enumerate() {
                if ti == tj {
                    mat[(index[ki], index[kj])] += self.mat[(i, j)];
                }
            }
        }
        let out = DensityMatrix {
            num_atoms: plan.kept_atoms.len(),
            num_photons: plan.kept_photons.len(),
            basis,
            index,
            mat,
        };
        out.validate()?;
        Ok(out)
    }

    /// Consistency checks: Hermitian, sensible trace, and (for dimensions the
    /// eigensolver accepts) no eigenvalue below the PSD floor.
    pub fn validate(&self) -> Result<()> {
        let defect = self.mat.hermiticity_defect();
        if defect > tol::HERMITICITY {
            return Err(Error::NotHermitian(defect));
        }
        let tr = self.trace();
        if !tr.is_finite() || tr < -tol::NORM_CONSERVATION || tr > 1.0 + 1e-9 {
            return Err(Error::BadTrace(tr));
        }
        if self.dim() <= 64 {
            let (values, _) = hermitian_eigensystem(&self.mat)?;
            if let Some(&worst) = values.last() {
                if worst < tol::PSD_FLOOR {
                    return Err(Error::NotPositiveSemidefinite(worst));
                }
            }
        }
        Ok(())
    }
}

/// Partial trace of a pure state: keep the selected registers, trace out the
/// rest together with the whole scatter-tag environment.
///
/// The result's basis contains every fully logical combination of the kept
/// registers (in canonical order) plus any lost-photon configurations that
/// actually occur. Kept atoms keep the order of their selectors, as do kept
/// photons. The trace equals the squared norm of the input.
pub fn reduced_density_matrix(state: &PureState, keep: &[Register]) -> Result<DensityMatrix> {
    let plan = KeepPlan::new(keep, state.num_atoms(), state.num_photons())?;
    // Group amplitudes by the traced-out content; each group contributes a
    // rank-one block, and different groups never interfere.
    let mut groups: BTreeMap<TracedKey, Vec<(BasisLabel, Amplitude)>> = BTreeMap::new();
    for (label, &amp) in state.terms() {
        let (kept, traced) = plan.split(label);
        groups.entry(traced).or_default().push((kept, amp));
    }
    let mut labels: BTreeSet<BasisLabel> = plan.logical_basis();
    for members in groups.values() {
        for (kept, _) in members {
            labels.insert(kept.clone());
        }
    }
    let basis: Vec<BasisLabel> = labels.into_iter().collect();
    let index: BTreeMap<BasisLabel, usize> =
        basis.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let mut mat = CMatrix::zeros(basis.len());
    for members in groups.values() {
        for (li, ai) in members {
            let i = index[li];
            for (lj, aj) in members {
                let j = index[lj];
                mat[(i, j)] += ai * aj.conj();
            }
        }
    }
    let out = DensityMatrix {
        num_atoms: plan.kept_atoms.len(),
        num_photons: plan.kept_photons.len(),
        basis,
        index,
        mat,
    };
    out.validate()?;
    Ok(out)
}

type TracedKey = (Vec<u8>, Vec<PhotonSlot>, Vec<ScatterEvent>);

struct KeepPlan {
    kept_atoms: Vec<usize>,
    kept_photons: Vec<usize>,
    other_atoms: Vec<usize>,
    other_photons: Vec<usize>,
}

impl KeepPlan {
    fn new(keep: &[Register], num_atoms: usize, num_photons: usize) -> Result<KeepPlan> {
        let mut kept_atoms = Vec::new();
        let mut kept_photons = Vec::new();
        for &reg in keep {
            match reg {
                Register::Atom(i) => {
                    if i >= num_atoms {
                        return Err(Error::RegisterOutOfRange(reg));
                    }
                    if kept_atoms.contains(&i) {
                        return Err(Error::DuplicateRegister);
                    }
                    kept_atoms.push(i);
                }
                Register::Photon(i) => {
                    if i >= num_photons {
                        return Err(Error::RegisterOutOfRange(reg));
                    }
                    if kept_photons.contains(&i) {
                        return Err(Error::DuplicateRegister);
                    }
                    kept_photons.push(i);
                }
            }
        }
        let other_atoms = (0..num_atoms).filter(|i| !kept_atoms.contains(i)).collect();
        let other_photons = (0..num_photons).filter(|i| !kept_photons.contains(i)).collect();
        Ok(KeepPlan { kept_atoms, kept_photons, other_atoms, other_photons })
    }

    fn split(&self, label: &BasisLabel) -> (BasisLabel, TracedKey) {
        let atoms: Vec<u8> = self.kept_atoms.iter().map(|&i| label.atom(i)).collect();
        let photons: Vec<PhotonSlot> = self.kept_photons.iter().map(|&i| label.photon(i)).collect();
        let kept = BasisLabel::raw(atoms, photons, Vec::new());
        let traced = (
            self.other_atoms.iter().map(|&i| label.atom(i)).collect(),
            self.other_photons.iter().map(|&i| label.photon(i)).collect(),
            label.scatter().to_vec(),
        );
        (kept, traced)
    }

    fn logical_basis(&self) -> BTreeSet<BasisLabel> {
        let n = self.kept_atoms.len() + self.kept_photons.len();
        let mut out = BTreeSet::new();
        for bits in 0..(1usize << n) {
            let atoms: Vec<u8> = (0..self.kept_atoms.len()).map(|i| ((bits >> i) & 1) as u8).collect();
            let photons: Vec<PhotonSlot> = (0..self.kept_photons.len())
                .map(|i| {
                    if (bits >> (self.kept_atoms.len() + i)) & 1 == 0 {
                        PhotonSlot::Mode0
                    } else {
                        PhotonSlot::Mode1
                    }
                })
                .collect();
            out.insert(BasisLabel::raw(atoms, photons, Vec::new()));
        }
        out
    }
}
