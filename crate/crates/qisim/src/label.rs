//! Basis labels for the sparse state representation.
//!
//! A label records the logical value of every atom, the slot of every photon
//! and the set of scatter events that have occurred. Scatter events act as an
//! orthogonal environment: two labels that differ anywhere, tags included,
//! name orthogonal basis states and never interfere.

use crate::{Error, Result};
use std::fmt;

/// Logical photon mode. `Mode0` is the interferometer's bottom port and the
/// logical 0; `Mode1` is the top port and the logical 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PhotonMode {
    Mode0,
    Mode1,
}

impl PhotonMode {
    /// The other logical mode.
    pub fn flipped(self) -> Self {
        match self {
            PhotonMode::Mode0 => PhotonMode::Mode1,
            PhotonMode::Mode1 => PhotonMode::Mode0,
        }
    }

    /// Logical bit value of the mode.
    pub fn bit(self) -> u8 {
        match self {
            PhotonMode::Mode0 => 0,
            PhotonMode::Mode1 => 1,
        }
    }
}

/// Occupancy of one photon register: a logical mode, or lost to a scatter
/// event. A lost photon carries no logical value and no gate touches it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PhotonSlot {
    Mode0,
    Mode1,
    Lost,
}

impl PhotonSlot {
    pub fn is_lost(self) -> bool {
        matches!(self, PhotonSlot::Lost)
    }

    /// Logical mode of the slot, if it has one.
    pub fn mode(self) -> Option<PhotonMode> {
        match self {
            PhotonSlot::Mode0 => Some(PhotonMode::Mode0),
            PhotonSlot::Mode1 => Some(PhotonMode::Mode1),
            PhotonSlot::Lost => None,
        }
    }
}

impl From<PhotonMode> for PhotonSlot {
    fn from(m: PhotonMode) -> Self {
        match m {
            PhotonMode::Mode0 => PhotonSlot::Mode0,
            PhotonMode::Mode1 => PhotonSlot::Mode1,
        }
    }
}

/// Selects one register of a state: an atom or a photon, both zero-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Register {
    Atom(usize),
    Photon(usize),
}

/// One scatter event: which photon was absorbed, during which interrogation,
/// and in which cycle of it. The triple is unique within a run, so distinct
/// events always stay orthogonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScatterEvent {
    pub photon: usize,
    pub interrogation: u32,
    pub cycle: u32,
}

/// One basis state of the full register: atom bits, photon slots, scatter tags.
///
/// Invariant maintained by the evolution operations: a photon slot is `Lost`
/// exactly when one scatter event references that photon index. The tag list
/// is kept sorted so equal label content always compares equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    atoms: Vec<u8>,
    photons: Vec<PhotonSlot>,
    scatter: Vec<ScatterEvent>,
}

impl BasisLabel {
    /// Label with every register in its logical value and no scatter events.
    /// Atom bits must be 0 or 1.
    pub fn logical(atoms: &[u8], photons: &[PhotonMode]) -> Result<Self> {
        if atoms.iter().any(|&b| b > 1) {
            return Err(Error::MalformedLabel);
        }
        Ok(BasisLabel {
            atoms: atoms.to_vec(),
            photons: photons.iter().map(|&m| m.into()).collect(),
            scatter: Vec::new(),
        })
    }

    /// Label from raw parts. Tags are sorted; atom bits must be 0 or 1 and
    /// every tag must reference a lost photon in range (and vice versa).
    pub fn new(atoms: Vec<u8>, photons: Vec<PhotonSlot>, mut scatter: Vec<ScatterEvent>) -> Result<Self> {
        if atoms.iter().any(|&b| b > 1) {
            return Err(Error::MalformedLabel);
        }
        scatter.sort_unstable();
        for pair in scatter.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::MalformedLabel);
            }
        }
        for (idx, slot) in photons.iter().enumerate() {
            let tagged = scatter.iter().filter(|e| e.photon == idx).count();
            let expect = usize::from(slot.is_lost());
            if tagged != expect {
                return Err(Error::MalformedLabel);
            }
        }
        if scatter.iter().any(|e| e.photon >= photons.len()) {
            return Err(Error::MalformedLabel);
        }
        Ok(BasisLabel { atoms, photons, scatter })
    }

    /// Unchecked constructor for reduced-basis labels, where a lost photon
    /// legitimately appears without its tag (the tag was traced out).
    pub(crate) fn raw(atoms: Vec<u8>, photons: Vec<PhotonSlot>, mut scatter: Vec<ScatterEvent>) -> Self {
        scatter.sort_unstable();
        BasisLabel { atoms, photons, scatter }
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn num_photons(&self) -> usize {
        self.photons.len()
    }

    pub fn atom(&self, idx: usize) -> u8 {
        self.atoms[idx]
    }

    pub fn photon(&self, idx: usize) -> PhotonSlot {
        self.photons[idx]
    }

    pub fn atoms(&self) -> &[u8] {
        &self.atoms
    }

    pub fn photons(&self) -> &[PhotonSlot] {
        &self.photons
    }

    pub fn scatter(&self) -> &[ScatterEvent] {
        &self.scatter
    }

    /// True when no photon is lost and no scatter tag is present.
    pub fn is_logical(&self) -> bool {
        self.scatter.is_empty() && self.photons.iter().all(|s| !s.is_lost())
    }

    /// Copy with one atom bit replaced.
    pub(crate) fn with_atom(&self, idx: usize, bit: u8) -> Self {
        let mut out = self.clone();
        out.atoms[idx] = bit;
        out
    }

    /// Copy with one photon slot replaced by a logical mode.
    pub(crate) fn with_photon(&self, idx: usize, mode: PhotonMode) -> Self {
        let mut out = self.clone();
        out.photons[idx] = mode.into();
        out
    }

    /// Copy with one photon marked lost under a fresh scatter tag.
    pub(crate) fn with_scatter(&self, event: ScatterEvent) -> Self {
        let mut out = self.clone();
        out.photons[event.photon] = PhotonSlot::Lost;
        out.scatter.push(event);
        out.scatter.sort_unstable();
        out
    }

    /// Copy with one photon register removed entirely. Tags referencing later
    /// photons shift down; the removed photon must not be lost.
    pub(crate) fn without_photon(&self, idx: usize) -> Self {
        debug_assert!(!self.photons[idx].is_lost());
        let mut out = self.clone();
        out.photons.remove(idx);
        for e in &mut out.scatter {
            if e.photon > idx {
                e.photon -= 1;
            }
        }
        out
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for &b in &self.atoms {
            write!(f, "{b}")?;
        }
        if !self.photons.is_empty() {
            write!(f, ";")?;
            for &p in &self.photons {
                match p {
                    PhotonSlot::Mode0 => write!(f, "0")?,
                    PhotonSlot::Mode1 => write!(f, "1")?,
                    PhotonSlot::Lost => write!(f, "L")?,
                }
            }
        }
        if !self.scatter.is_empty() {
            write!(f, ";")?;
            for (i, e) in self.scatter.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "s(p{} i{} c{})", e.photon, e.interrogation, e.cycle)?;
            }
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logical_label_round_trip() {
        let l = BasisLabel::logical(&[1, 0], &[PhotonMode::Mode1]).unwrap();
        assert_eq!(l.atoms(), &[1, 0]);
        assert_eq!(l.photon(0), PhotonSlot::Mode1);
        assert!(l.is_logical());
        assert_eq!(l.to_string(), "|10;1>");
    }

    #[test]
    fn lost_photon_requires_matching_tag() {
        let e = ScatterEvent { photon: 0, interrogation: 0, cycle: 3 };
        assert!(BasisLabel::new(vec![0], vec![PhotonSlot::Lost], vec![e]).is_ok());
        assert!(BasisLabel::new(vec![0], vec![PhotonSlot::Lost], vec![]).is_err());
        assert!(BasisLabel::new(vec![0], vec![PhotonSlot::Mode0], vec![e]).is_err());
    }

    #[test]
    fn tag_order_is_canonical() {
        let e0 = ScatterEvent { photon: 0, interrogation: 2, cycle: 0 };
        let e1 = ScatterEvent { photon: 1, interrogation: 0, cycle: 5 };
        let a = BasisLabel::new(vec![], vec![PhotonSlot::Lost, PhotonSlot::Lost], vec![e1, e0]).unwrap();
        let b = BasisLabel::new(vec![], vec![PhotonSlot::Lost, PhotonSlot::Lost], vec![e0, e1]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ordering_puts_logical_modes_before_lost() {
        let a = BasisLabel::logical(&[0], &[PhotonMode::Mode0]).unwrap();
        let b = BasisLabel::logical(&[0], &[PhotonMode::Mode1]).unwrap();
        let e = ScatterEvent { photon: 0, interrogation: 0, cycle: 0 };
        let c = BasisLabel::new(vec![0], vec![PhotonSlot::Lost], vec![e]).unwrap();
        assert!(a < b && b < c);
    }

    #[test]
    fn photon_removal_shifts_tags() {
        let e = ScatterEvent { photon: 1, interrogation: 0, cycle: 0 };
        let l = BasisLabel::new(vec![1], vec![PhotonSlot::Mode0, PhotonSlot::Lost], vec![e]).unwrap();
        let out = l.without_photon(0);
        assert_eq!(out.num_photons(), 1);
        assert_eq!(out.scatter()[0].photon, 0);
        assert!(out.photon(0).is_lost());
    }
}
