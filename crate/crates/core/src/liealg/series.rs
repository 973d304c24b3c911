use super::LieAlg;
use crate::linalg::Subspace;

impl LieAlg {
    /// L = L^(0) ⊇ L^(1) ⊇ …, stopping at the first repeated term. The
    /// last entry is 0 iff L is solvable.
    pub fn derived_series(&self) -> Vec<Subspace> {
        self.series(|l, s| l.bracket_spaces(s, s))
    }

    /// L = L^1 ⊇ [L, L] ⊇ [L, [L, L]] ⊇ …, stopping at the first repeat.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = self.full_space();
        self.series(move |l, s| l.bracket_spaces(&full, s))
    }

    fn series(&self, mut next: impl FnMut(&LieAlg, &Subspace) -> Subspace) -> Vec<Subspace> {
        let mut out = vec![self.full_space()];
        loop {
            let last = out.last().unwrap();
            if last.is_zero() {
                return out;
            }
            let s = next(self, last);
            if s == *last {
                return out;
            }
            out.push(s);
        }
    }

    pub fn derived_dims(&self) -> Vec<usize> {
        self.derived_series().iter().map(Subspace::dim).collect()
    }

    pub fn lower_central_dims(&self) -> Vec<usize> {
        self.lower_central_series().iter().map(Subspace::dim).collect()
    }

    /// Least d with L^(d) = 0, or None if L is not solvable.
    pub fn derived_length(&self) -> Option<usize> {
        let s = self.derived_series();
        s.last().unwrap().is_zero().then(|| s.len() - 1)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_length().is_some()
    }

    /// Least c with L^{c+1} = 0, or None if L is not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let s = self.lower_central_series();
        s.last().unwrap().is_zero().then(|| s.len() - 1)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn heisenberg_and_abelian() {
        let f = make_field(5, 1).unwrap();
        let h = LieAlg::heisenberg(&f);
        assert_eq!(h.lower_central_dims(), vec![3, 1, 0]);
        assert_eq!(h.nilpotency_class(), Some(2));
        assert_eq!(h.derived_length(), Some(2));
        let a = LieAlg::abelian(&f, 3);
        assert_eq!(a.nilpotency_class(), Some(1));
        assert_eq!(a.derived_dims(), vec![3, 0]);
    }

    #[test]
    fn non_solvable_stops() {
        // sl2 over F_5: [h,e]=2e, [h,f]=-2f, [e,f]=h on the basis (h, e, f)
        let f = make_field(5, 1).unwrap();
        let two = f.from_int(2);
        let l = LieAlg::new(
            &f,
            3,
            vec![
                (0, 1, vec![f.zero(), two, f.zero()]),
                (0, 2, vec![f.zero(), f.zero(), f.neg(two)]),
                (1, 2, vec![f.one(), f.zero(), f.zero()]),
            ],
        )
        .unwrap();
        assert_eq!(l.derived_dims(), vec![3]);
        assert_eq!(l.derived_length(), None);
        assert!(!l.is_nilpotent());
    }
}
