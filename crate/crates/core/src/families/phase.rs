/// The integer phase pair (n, k): the factors e^{inπ} and e^{ikπ} collapse to
/// exact ±1 multipliers on ψ₁ and ψ₂ respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PhaseInts {
    pub n: i64,
    pub k: i64,
}

impl PhaseInts {
    pub fn new(n: i64, k: i64) -> Self {
        Self { n, k }
    }

    /// (-1)^n applied to ψ₁.
    pub fn sign1(&self) -> f64 {
        if self.n.rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// (-1)^k applied to ψ₂.
    pub fn sign2(&self) -> f64 {
        if self.k.rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        }
    }
}
