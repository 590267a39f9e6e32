//! (Z/N)^x as a product of cyclic groups, its characters, and the divisor
//! orbits of Z/N under multiplication by units.

use crate::arith::{divisors, euler_phi, factorize, gcd, lcm, pow_mod};

/// Elements are indexed by the mixed-radix exponent vector over `gens`.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    pub n: u64,
    pub gens: Vec<u64>,
    pub orders: Vec<u64>,
    pub lambda: u64,
    pub elems: Vec<u64>,
    /// Position of each residue in `elems`, or `usize::MAX` for non-units.
    pub pos: Vec<usize>,
}

fn primitive_root_mod_prime_power(p: u64, q: u64) -> u64 {
    let phi = euler_phi(q);
    let fs = factorize(phi);
    (2..q)
        .find(|&g| gcd(g, p) == 1 && fs.iter().all(|&(f, _)| pow_mod(g, phi / f, q) != 1))
        .expect("odd prime powers have primitive roots")
}

/// x with x = a mod q and x = 1 mod n/q.
fn crt_lift(a: u64, q: u64, n: u64) -> u64 {
    let r = n / q;
    (0..q).map(|t| 1 + t * r).find(|x| x % q == a % q).expect("coprime moduli")
}

impl UnitGroup {
    pub fn new(n: u64) -> Self {
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for (p, e) in factorize(n) {
            let q = p.pow(e);
            if p == 2 {
                if e >= 2 {
                    gens.push(crt_lift(q - 1, q, n));
                    orders.push(2);
                }
                if e >= 3 {
                    gens.push(crt_lift(5, q, n));
                    orders.push(q / 4);
                }
            } else {
                gens.push(crt_lift(primitive_root_mod_prime_power(p, q), q, n));
                orders.push(q / p * (p - 1));
            }
        }
        let size: u64 = orders.iter().product();
        let lambda = orders.iter().fold(1, |a, &b| lcm(a, b));
        let mut elems = Vec::with_capacity(size as usize);
        let mut pos = vec![usize::MAX; n as usize];
        for idx in 0..size {
            let mut x = 1 % n.max(1);
            let mut rest = idx;
            for (g, o) in gens.iter().zip(&orders) {
                x = x * pow_mod(*g, rest % o, n) % n;
                rest /= o;
            }
            pos[x as usize] = elems.len();
            elems.push(x);
        }
        if n == 1 {
            pos[0] = 0;
        }
        UnitGroup { n, gens, orders, lambda, elems, pos }
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn digits(&self, mut idx: usize) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&o| {
                let d = idx as u64 % o;
                idx /= o as usize;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, ds: &[u64]) -> usize {
        let mut idx = 0u64;
        for (d, o) in ds.iter().zip(&self.orders).rev() {
            idx = idx * o + d % o;
        }
        idx as usize
    }

    pub fn index_of(&self, x: u64) -> usize {
        self.pos[(x % self.n) as usize]
    }

    /// Character c (indexed like elements, via the dual basis) at element g,
    /// as an exponent of a primitive lambda-th root of unity.
    pub fn char_exp(&self, c: usize, g: usize) -> u64 {
        let (cd, gd) = (self.digits(c), self.digits(g));
        cd.iter()
            .zip(&gd)
            .zip(&self.orders)
            .map(|((a, b), o)| a * b % o * (self.lambda / o))
            .sum::<u64>()
            % self.lambda
    }

    /// Full |G| x |G| table of `char_exp`.
    pub fn char_table(&self) -> Vec<u32> {
        let s = self.size();
        let digs: Vec<Vec<u64>> = (0..s).map(|i| self.digits(i)).collect();
        let mut t = vec![0u32; s * s];
        for c in 0..s {
            for g in 0..s {
                let e: u64 = digs[c]
                    .iter()
                    .zip(&digs[g])
                    .zip(&self.orders)
                    .map(|((a, b), o)| a * b % o * (self.lambda / o))
                    .sum();
                t[c * s + g] = (e % self.lambda) as u32;
            }
        }
        t
    }

    /// Index of the character a / b.
    pub fn char_div(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let ds: Vec<u64> = x.iter().zip(&y).zip(&self.orders).map(|((u, v), o)| (u + o - v) % o).collect();
        self.from_digits(&ds)
    }

    pub fn char_pow(&self, a: usize, k: u64) -> usize {
        let ds: Vec<u64> = self.digits(a).iter().zip(&self.orders).map(|(u, o)| u * k % o).collect();
        self.from_digits(&ds)
    }

    /// Smallest index in the Galois orbit {c^b : b prime to lambda}.
    pub fn galois_class(&self, c: usize) -> usize {
        (1..=self.lambda)
            .filter(|&b| gcd(b, self.lambda) == 1)
            .map(|b| self.char_pow(c, b))
            .min()
            .unwrap_or(c)
    }
}

/// Orbits of Z/N under G: one per divisor d (the additive order), with
/// representative N/d, and a lift g_x in G with g_x * (N/d) = x.
#[derive(Clone, Debug)]
pub struct DivisorOrbits {
    pub divisors: Vec<u64>,
    /// Index into `divisors` of the additive order of each residue.
    pub order_of: Vec<usize>,
    pub lift: Vec<usize>,
    /// Elements of G fixing N/d, per divisor.
    pub stabilizers: Vec<Vec<usize>>,
}

impl DivisorOrbits {
    pub fn new(g: &UnitGroup) -> Self {
        let n = g.n;
        let divisors = divisors(n);
        let mut order_of = vec![0; n as usize];
        let mut lift = vec![usize::MAX; n as usize];
        let mut stabilizers = Vec::new();
        for (di, &d) in divisors.iter().enumerate() {
            let rep = (n / d) % n;
            let mut stab = Vec::new();
            for (gi, &e) in g.elems.iter().enumerate() {
                let y = (e * rep % n) as usize;
                if lift[y] == usize::MAX {
                    lift[y] = gi;
                    order_of[y] = di;
                }
                if y as u64 == rep {
                    stab.push(gi);
                }
            }
            stabilizers.push(stab);
        }
        DivisorOrbits { divisors, order_of, lift, stabilizers }
    }

    /// Whether the character is trivial on the stabilizer of N/d, i.e. its
    /// conductor divides d.
    pub fn admissible(&self, table: &[u32], size: usize, c: usize, di: usize) -> bool {
        self.stabilizers[di].iter().all(|&g| table[c * size + g] == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_shapes() {
        for n in [1u64, 2, 3, 4, 8, 16, 24, 120, 361] {
            let g = UnitGroup::new(n);
            assert_eq!(g.size() as u64, euler_phi(n), "N={n}");
            assert!(g.elems.iter().all(|&x| gcd(x, n) == 1 || n == 1));
            assert_eq!(g.lambda, crate::arith::carmichael(n).max(1));
        }
    }

    #[test]
    fn characters_are_homomorphisms() {
        let g = UnitGroup::new(120);
        let s = g.size();
        let t = g.char_table();
        for c in 0..s {
            for a in 0..s {
                for b in 0..s {
                    let ab = g.index_of(g.elems[a] * g.elems[b]);
                    assert_eq!((t[c * s + a] as u64 + t[c * s + b] as u64) % g.lambda, t[c * s + ab] as u64);
                }
            }
        }
        let c = 5;
        assert_eq!(g.char_div(g.char_pow(c, 2), c), c);
    }

    #[test]
    fn orbits_cover() {
        let g = UnitGroup::new(36);
        let o = DivisorOrbits::new(&g);
        for x in 0..36u64 {
            let d = o.divisors[o.order_of[x as usize]];
            assert_eq!(d, 36 / gcd(x, 36));
            assert_eq!(g.elems[o.lift[x as usize]] * (36 / d) % 36, x);
        }
    }
}
