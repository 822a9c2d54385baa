//! Affine systems over GF(2) in the 64 bits of a vertex index, with ascending
//! enumeration of their solutions.

/// Equations `parity(mask & x) = rhs`, kept reduced: each row's pivot is its lowest
/// set bit and no other row contains that bit.
#[derive(Debug, Clone, Default)]
pub(crate) struct System {
    rows: Vec<(u64, bool)>,
    consistent: bool,
}

impl System {
    pub fn new() -> Self {
        System { rows: Vec::new(), consistent: true }
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    pub fn add(&mut self, mut mask: u64, mut rhs: bool) {
        for &(m, b) in &self.rows {
            if mask & (m & m.wrapping_neg()) != 0 {
                mask ^= m;
                rhs ^= b;
            }
        }
        if mask == 0 {
            self.consistent &= !rhs;
            return;
        }
        let pivot = mask & mask.wrapping_neg();
        for row in &mut self.rows {
            if row.0 & pivot != 0 {
                row.0 ^= mask;
                row.1 ^= rhs;
            }
        }
        self.rows.push((mask, rhs));
    }

    /// The solution set, or `None` when the system is inconsistent.
    pub fn solutions(&self) -> Option<Solutions> {
        if !self.consistent {
            return None;
        }
        let pivots = self.rows.iter().fold(0u64, |p, &(m, _)| p | (m & m.wrapping_neg()));
        let base = self.rows.iter().filter(|r| r.1).fold(0u64, |x, &(m, _)| x | (m & m.wrapping_neg()));
        // Free bit f contributes itself plus the pivot of every row containing f.
        let free: Vec<u64> = (0..64)
            .map(|f| 1u64 << f)
            .filter(|b| pivots & b == 0)
            .map(|b| self.rows.iter().filter(|r| r.0 & b != 0).fold(b, |v, &(m, _)| v | (m & m.wrapping_neg())))
            .collect();
        Some(Solutions { base, free })
    }
}

/// `{ base ⊕ Σ c_i free[i] }`; the map `c ↦ element` is strictly increasing.
#[derive(Debug, Clone)]
pub(crate) struct Solutions {
    base: u64,
    free: Vec<u64>,
}

impl Solutions {
    pub fn count(&self) -> u128 {
        1u128 << self.free.len()
    }

    pub fn nth(&self, c: u128) -> u64 {
        let mut x = self.base;
        let mut rest = c;
        let mut i = 0;
        while rest != 0 {
            if rest & 1 == 1 {
                x ^= self.free[i];
            }
            rest >>= 1;
            i += 1;
        }
        x
    }

    /// Index of the least solution `>= lo`.
    fn first_at_least(&self, lo: u64) -> Option<u128> {
        let (mut a, mut b) = (0u128, self.count());
        while a < b {
            let mid = a + (b - a) / 2;
            if self.nth(mid) < lo {
                a = mid + 1;
            } else {
                b = mid;
            }
        }
        (a < self.count()).then_some(a)
    }

    /// Solutions in `[lo, hi]`, ascending.
    pub fn between(self, lo: u64, hi: u64) -> impl Iterator<Item = u64> {
        let start = self.first_at_least(lo).unwrap_or(self.count());
        let end = self.count();
        (start..end).map(move |c| self.nth(c)).take_while(move |&x| x <= hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parity(x: u64) -> bool {
        x.count_ones() % 2 == 1
    }

    #[test]
    fn enumerates_exactly_the_solutions_in_order() {
        let eqs = [(0b1011u64, true), (0b0110, false), (0b1_0000_0001, true), (0b1100_0000, true)];
        let mut s = System::new();
        for &(m, b) in &eqs {
            s.add(m, b);
        }
        let got: Vec<u64> = s.solutions().unwrap().between(0, 5000).collect();
        let expect: Vec<u64> = (0..=5000).filter(|&x| eqs.iter().all(|&(m, b)| parity(m & x) == b)).collect();
        assert_eq!(got, expect);
        let tail: Vec<u64> = s.solutions().unwrap().between(1234, 2000).collect();
        assert_eq!(tail, expect.iter().copied().filter(|&x| (1234..=2000).contains(&x)).collect::<Vec<_>>());
    }

    #[test]
    fn detects_inconsistency() {
        let mut s = System::new();
        s.add(0b11, true);
        s.add(0b01, false);
        s.add(0b10, false);
        assert!(!s.is_consistent());
        assert!(s.solutions().is_none());
    }

    #[test]
    fn unconstrained_space_is_all_of_u64() {
        let s = System::new().solutions().unwrap();
        assert_eq!(s.count(), 1u128 << 64);
        assert_eq!(s.nth(12345), 12345);
        assert_eq!(s.clone().between(u64::MAX - 1, u64::MAX).collect::<Vec<_>>(), vec![u64::MAX - 1, u64::MAX]);
    }
}
