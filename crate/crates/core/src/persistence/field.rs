use super::PersistenceError;

/// Arithmetic in Z_p.
///
/// Inverses come from the extended Euclidean algorithm and are tabulated for
/// moduli up to 2^16.
#[derive(Clone, Debug)]
pub struct FieldPrime {
    p: u32,
    inverses: Vec<u32>,
}

const TABLE_LIMIT: u32 = 1 << 16;

impl FieldPrime {
    pub const DEFAULT: u32 = 11;

    pub fn new(p: u32) -> Result<Self, PersistenceError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(PersistenceError::NotPrime(p));
        }
        let inverses = if p <= TABLE_LIMIT {
            (0..p).map(|a| if a == 0 { 0 } else { ext_inverse(a, p) }).collect()
        } else {
            Vec::new()
        };
        Ok(FieldPrime { p, inverses })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a % self.p != 0, "zero has no inverse");
        match self.inverses.get(a as usize) {
            Some(&x) => x,
            None => ext_inverse(a % self.p, self.p),
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.p as u64) as u32
    }

    /// `a − c·b`.
    pub fn sub_mul(&self, a: u32, c: u32, b: u32) -> u32 {
        let cb = self.mul(c, b);
        if a >= cb {
            a - cb
        } else {
            a + self.p - cb
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
}

impl Default for FieldPrime {
    fn default() -> Self {
        FieldPrime::new(Self::DEFAULT).expect("11 is prime")
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn ext_inverse(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u32
}
