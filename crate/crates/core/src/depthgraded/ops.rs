use super::biseq::BiSeq;
use super::maps::{add_modp, binomial_tail, check_in_w, e_map_modp, without, ModpVec};
use super::theta::ThetaTable;
use crate::cyclotomic::Level;
use crate::{Error, Result};

/// The mod-p model on 𝒲^{⊗d} for a special level: ℰ_d and the operators
/// L̃_i, R̃_i, S.
#[derive(Clone, Debug)]
pub struct ModpModel {
    pub level: Level,
    pub table: ThetaTable,
}

impl ModpModel {
    pub fn new(level: &Level) -> Result<Self> {
        Ok(ModpModel { level: level.clone(), table: ThetaTable::new(level)? })
    }

    pub fn p(&self) -> u64 {
        self.table.p
    }

    pub fn e_map(&self, b: &BiSeq) -> Result<ModpVec> {
        e_map_modp(&self.level, &self.table, b)
    }

    fn check_index(&self, b: &BiSeq, i: usize) -> Result<()> {
        check_in_w(&self.level, b)?;
        if i == 0 || i >= b.depth() {
            return Err(Error::Invalid(format!("operator index {i} outside 1..{}", b.depth())));
        }
        Ok(())
    }

    /// L̃_i (1-based): drop slot i, append θ̃(ε_i/ε_{i+1}); zero unless l_i = 0.
    pub fn op_l(&self, i: usize, b: &BiSeq) -> Result<ModpVec> {
        self.check_index(b, i)?;
        let mut out = ModpVec::new();
        if b.ls[i - 1] == 0 {
            let rest = without(b, i - 1, i - 1);
            for (e, c) in self.table.tilde(self.level.div(b.eps[i - 1], b.eps[i])) {
                add_modp(&mut out, rest.pushed(*e, 0), *c, self.p());
            }
        }
        Ok(out)
    }

    /// R̃_i (1-based): drop ε_{i+1} and l_i, append θ̃(ε_{i+1}/ε_i).
    pub fn op_r(&self, i: usize, b: &BiSeq) -> Result<ModpVec> {
        self.check_index(b, i)?;
        let mut out = ModpVec::new();
        if b.ls[i - 1] == 0 {
            let rest = without(b, i, i - 1);
            for (e, c) in self.table.tilde(self.level.div(b.eps[i], b.eps[i - 1])) {
                add_modp(&mut out, rest.pushed(*e, 0), *c, self.p());
            }
        }
        Ok(out)
    }

    /// S: the binomial tail with r starting at l_d + 1.
    pub fn op_s(&self, b: &BiSeq) -> Result<ModpVec> {
        check_in_w(&self.level, b)?;
        let mut out = ModpVec::new();
        binomial_tail(b, b.ls[b.depth() - 1] + 1, self.p(), &mut out);
        Ok(out)
    }

    /// Σ L̃_i - Σ R̃_i + S.
    pub fn lrs(&self, b: &BiSeq) -> Result<ModpVec> {
        let p = self.p();
        let mut out = self.op_s(b)?;
        for i in 1..b.depth() {
            for (t, c) in self.op_l(i, b)? {
                add_modp(&mut out, t, c, p);
            }
            for (t, c) in self.op_r(i, b)? {
                add_modp(&mut out, t, p - c, p);
            }
        }
        Ok(out)
    }

    /// Applies a basis-level operator linearly.
    pub fn apply(&self, v: &ModpVec, op: impl Fn(&BiSeq) -> Result<ModpVec>) -> Result<ModpVec> {
        let p = self.p();
        let mut out = ModpVec::new();
        for (b, c) in v {
            for (t, x) in op(b)? {
                add_modp(&mut out, t, crate::arith::mul_mod(*c, x, p), p);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{make_level, UnityRoot};

    fn pair(a: u64, b: u64) -> BiSeq {
        BiSeq::new(vec![UnityRoot(a), UnityRoot(b)], vec![0, 0]).unwrap()
    }

    fn sum_pairs(a: u64, start: u64, step: u64, count: u64) -> ModpVec {
        (0..count).map(|i| (pair(a, start + step * i), 1)).collect()
    }

    #[test]
    fn r_iterates_at_729() {
        let m = ModpModel::new(&make_level(729).unwrap()).unwrap();
        let r = |v: &ModpVec| m.apply(v, |b| m.op_r(1, b)).unwrap();
        let u = ModpVec::from([(pair(1, 100), 1)]);
        let r1 = r(&u);
        assert_eq!(r1, sum_pairs(1, 70, 81, 9));
        let r2 = r(&r1);
        assert_eq!(r2, sum_pairs(1, 4, 27, 27));
        let r3 = r(&r2);
        assert_eq!(r3, sum_pairs(1, 1, 9, 81));
        let r4 = r(&r3);
        assert_eq!(r4, sum_pairs(1, 1, 3, 243));
        assert!(r(&r4).is_empty());
    }

    #[test]
    fn s_on_zero_exponents_vanishes() {
        let m = ModpModel::new(&make_level(9).unwrap()).unwrap();
        assert!(m.op_s(&pair(1, 4)).unwrap().is_empty());
        assert!(m.op_l(0, &pair(1, 4)).is_err());
        assert!(m.op_r(2, &pair(1, 4)).is_err());
    }

    #[test]
    fn weight_two_is_l_minus_r() {
        let m = ModpModel::new(&make_level(9).unwrap()).unwrap();
        for a in [1, 4, 7] {
            for b in [1, 4, 7] {
                let u = pair(a, b);
                let mut lhs = m.e_map(&u).unwrap();
                add_modp(&mut lhs, u.clone(), 2, 3);
                let l = m.op_l(1, &u).unwrap();
                let mut rhs = l.clone();
                for (t, c) in m.op_r(1, &u).unwrap() {
                    add_modp(&mut rhs, t, 3 - c, 3);
                }
                assert_eq!(lhs, rhs);
            }
        }
    }
}
