//! Annihilators and linkage inside a complete intersection `k[x]/(x^i)`.

use super::echelon::{kernel, Echelon, SparseVec};
use super::frame::QuotientFrame;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// The linked algebra `C0 = B0/(0 : f)` together with the dimensions that
/// relate it to `A0 = B0/(f)`.
#[derive(Clone, Debug)]
pub struct Linkage {
    pub dim_b0: usize,
    pub dim_annihilator: usize,
    pub dim_c0: usize,
    pub dim_a0: usize,
    pub socle_dim: usize,
    pub gorenstein: bool,
    /// Ideal generators of `(0 : f)`, lowest degree first.
    pub generators: Vec<Polynomial>,
    pub c0: QuotientFrame,
}

impl QuotientFrame {
    fn require_complete_intersection(&self) -> Result<()> {
        if self.gens().is_empty() {
            Ok(())
        } else {
            Err(Error::UnsupportedFrame)
        }
    }

    fn multiplication_images(&self, f: &Polynomial) -> Vec<SparseVec> {
        let one = self.domain().one();
        (0..self.basis_size())
            .map(|i| self.to_vec(&f.mul_monomial(&self.monomial_at(i), &one)))
            .collect()
    }

    /// Dimension of `f·B` for a frame without extra generators.
    pub fn multiplication_rank(&self, f: &Polynomial) -> Result<usize> {
        self.require_complete_intersection()?;
        let mut ech = Echelon::new(self.domain());
        for v in self.multiplication_images(f) {
            ech.insert(&v);
        }
        Ok(ech.rank())
    }

    /// A basis of `(0 : f)`, in reduced echelon form.
    pub fn annihilator(&self, f: &Polynomial) -> Result<Vec<Polynomial>> {
        Ok(self
            .annihilator_vecs(f)?
            .iter()
            .map(|v| self.to_poly(v))
            .collect())
    }

    fn annihilator_vecs(&self, f: &Polynomial) -> Result<Vec<SparseVec>> {
        self.require_complete_intersection()?;
        let images = self.multiplication_images(f);
        Ok(kernel(self.domain(), &images, self.basis_size()))
    }

    /// Span of `f·B` as an echelon subspace.
    pub fn principal_subspace(&self, f: &Polynomial) -> Result<Echelon> {
        self.require_complete_intersection()?;
        let mut ech = Echelon::new(self.domain());
        for v in self.multiplication_images(f) {
            ech.insert(&v);
        }
        Ok(ech.into_reduced())
    }

    /// `(0 : S)` for a subspace `S` that is an ideal.
    pub fn annihilator_of_subspace(&self, ideal: &Echelon) -> Result<Echelon> {
        self.require_complete_intersection()?;
        let gens: Vec<Polynomial> = ideal.rows().into_iter().map(|r| self.to_poly(r)).collect();
        // a ∈ (0 : S) iff a·g = 0 for every spanning g; stack the maps
        let n = self.basis_size();
        let one = self.domain().one();
        let images: Vec<SparseVec> = (0..n)
            .map(|i| {
                let m = self.monomial_at(i);
                let mut row = Vec::new();
                for (k, g) in gens.iter().enumerate() {
                    let v = self.to_vec(&g.mul_monomial(&m, &one));
                    row.extend(v.into_iter().map(|(c, x)| (k * n + c, x)));
                }
                row
            })
            .collect();
        let mut ech = Echelon::new(self.domain());
        for v in kernel(self.domain(), &images, gens.len() * n) {
            ech.insert(&v);
        }
        Ok(ech.into_reduced())
    }

    /// Links `A0 = B0/(f)` to `C0 = B0/(0 : f)` inside this complete
    /// intersection.
    pub fn link(&self, f: &Polynomial) -> Result<Linkage> {
        let kernel_vecs = self.annihilator_vecs(f)?;
        let mut subspace = Echelon::new(self.domain());
        for v in &kernel_vecs {
            subspace.insert(v);
        }
        let generators = self.minimal_generators(&kernel_vecs, f.is_homogeneous());
        let c0 = QuotientFrame::with_subspace(self, generators.clone(), subspace);
        let socle_dim = c0.socle_dim();
        let dim_b0 = self.basis_size();
        let dim_annihilator = kernel_vecs.len();
        Ok(Linkage {
            dim_b0,
            dim_annihilator,
            dim_c0: dim_b0 - dim_annihilator,
            // rank-nullity: dim B0/(f) = dim B0 - dim f·B0 = dim (0 : f)
            dim_a0: dim_annihilator,
            socle_dim,
            gorenstein: socle_dim == 1,
            generators,
            c0,
        })
    }

    /// Greedy generators of the ideal spanned by `basis`: candidates are
    /// taken lowest degree first and kept when not already in the ideal
    /// generated so far.
    fn minimal_generators(&self, basis: &[SparseVec], split_graded: bool) -> Vec<Polynomial> {
        let mut candidates: Vec<Polynomial> = Vec::new();
        for v in basis {
            let p = self.to_poly(v);
            if split_graded {
                let mut by_degree: std::collections::BTreeMap<u64, Vec<_>> = Default::default();
                for (m, c) in p.terms() {
                    by_degree.entry(m.degree()).or_default().push((m.clone(), c.clone()));
                }
                for (_, terms) in by_degree {
                    candidates.push(Polynomial::from_terms(self.domain(), self.nvars(), terms));
                }
            } else {
                candidates.push(p);
            }
        }
        // stable sort keeps echelon order within a degree
        candidates.sort_by_key(|p| (p.order(), p.total_degree()));
        let one = self.domain().one();
        let mut span = Echelon::new(self.domain());
        let mut out = Vec::new();
        let target = basis.len();
        for c in candidates {
            if span.rank() == target {
                break;
            }
            if span.contains(&self.to_vec(&c)) {
                continue;
            }
            for i in 0..self.basis_size() {
                let v = self.to_vec(&c.mul_monomial(&self.monomial_at(i), &one));
                if !v.is_empty() {
                    span.insert(&v);
                }
            }
            out.push(c);
        }
        out
    }
}
