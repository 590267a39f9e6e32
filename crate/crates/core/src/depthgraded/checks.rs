use num_bigint::BigInt;

use super::biseq::{Alphabet, BiSeq, XSpaceIndexer};
use super::maps::{add_modp, d_iter, d_terms, e_map, reduce_modp, ModpVec};
use super::ops::ModpModel;
use super::yspace::{YSpace, YTensorIndexer};
use crate::cyclotomic::{Level, UnityRoot};
use crate::exactlinalg::{
    fast_path_primes, integer_row, rank_integer, rank_rational, Nilpotency, PrimeField, RankMethod,
    RankOptions, Rationals, Rref, SparseMat, SparseVec,
};
use crate::par;
use crate::Result;

fn nu_indexer(lv: &Level, k: u32, d: usize) -> Result<XSpaceIndexer> {
    XSpaceIndexer::new(lv, d, k, Alphabet::Nu)
}

fn to_sparse(ix: &XSpaceIndexer, v: &ModpVec) -> SparseVec<u64> {
    let pairs = v.iter().map(|(b, c)| (ix.index(b).expect("weight-preserving map"), *c)).collect();
    SparseVec::from_sorted_unchecked(sorted(pairs))
}

fn sorted(mut pairs: Vec<(usize, u64)>) -> Vec<(usize, u64)> {
    pairs.sort_unstable_by_key(|e| e.0);
    pairs
}

/// ℰ_d - id = Σ L̃_i - Σ R̃_i + S on every basis vector of (𝒲^{⊗d})_k.
pub fn decomposition_check(lv: &Level, k: u32, d: usize) -> Result<bool> {
    let m = ModpModel::new(lv)?;
    let ix = nu_indexer(lv, k, d)?;
    let p = m.p();
    let ok = par::map_indexed(ix.dim(), |i| -> Result<bool> {
        let b = ix.symbol(i);
        let mut lhs = m.e_map(&b)?;
        add_modp(&mut lhs, b.clone(), p - 1, p);
        Ok(lhs == m.lrs(&b)?)
    });
    ok.into_iter().try_fold(true, |acc, r| Ok(acc && r?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotenceReport {
    pub dim: usize,
    pub result: Nilpotency,
}

/// Nilpotency index of (ℰ_d)_k - id on (𝒲^{⊗d})_k.
pub fn unipotence_check(lv: &Level, k: u32, d: usize) -> Result<UnipotenceReport> {
    let m = ModpModel::new(lv)?;
    let ix = nu_indexer(lv, k, d)?;
    let p = m.p();
    let field = PrimeField::new(p)?;
    let cols: Vec<SparseVec<u64>> = par::map_indexed(ix.dim(), |i| -> Result<SparseVec<u64>> {
        let b = ix.symbol(i);
        let mut t = m.e_map(&b)?;
        add_modp(&mut t, b, p - 1, p);
        Ok(to_sparse(&ix, &t))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let apply = |v: &SparseVec<u64>| {
        let mut terms: Vec<(usize, u64)> = Vec::new();
        for (j, c) in v.iter() {
            terms.extend(cols[*j].iter().map(|(i, x)| (*i, c * x % p)));
        }
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(usize, u64)> = Vec::with_capacity(terms.len());
        for (i, x) in terms {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = (last.1 + x) % p,
                _ => out.push((i, x)),
            }
        }
        out.retain(|t| t.1 != 0);
        SparseVec::from_sorted_unchecked(out)
    };
    Ok(UnipotenceReport { dim: ix.dim(), result: crate::exactlinalg::nilpotency_index(&field, ix.dim(), apply) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    pub cokernel: usize,
    pub method: RankMethod,
}

/// Cokernel of D_d^iter: (X^{⊗d})_k -> (Y^{⊗d})_k over Q.
pub fn surjectivity_check(lv: &Level, k: u32, d: usize, opts: &RankOptions) -> Result<SurjectivityReport> {
    let ix = XSpaceIndexer::new(lv, d, k, Alphabet::Mu)?;
    let ys = YSpace::new(lv, k - d as u32);
    let yt = YTensorIndexer::new(&ys, d, k);
    let rows = par::map_indexed(ix.dim(), |i| d_iter(&ys, &yt, &ix.symbol(i)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut m = SparseMat::from_rows(Rationals, yt.dim(), rows);
    m.rows.retain(|r| !r.is_zero());
    let opts = RankOptions { avoid: lv.n(), ..opts.clone() };
    let rep = rank_rational(&m, &opts);
    Ok(SurjectivityReport {
        domain_dim: ix.dim(),
        codomain_dim: yt.dim(),
        rank: rep.rank,
        cokernel: yt.dim() - rep.rank,
        method: rep.method,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisReport {
    pub dim_w: usize,
    pub dim_y: usize,
    pub rank: usize,
    /// D_d sends every basis vector of W^{⊗d} into Y ⊗ W^{⊗(d-1)}.
    pub stable: bool,
    pub bijective: bool,
}

/// D_d^iter restricted to (W^{⊗d})_k. A full rank modulo a prime certifies
/// full rank over Q for the integer-scaled rows; otherwise the rank is
/// recomputed exactly.
pub fn basis_bijectivity_check(lv: &Level, k: u32, d: usize) -> Result<BasisReport> {
    let ix = nu_indexer(lv, k, d)?;
    let ys = YSpace::new(lv, k - d as u32);
    let yt = YTensorIndexer::new(&ys, d, k);
    let stable = ix.symbols().all(|b| {
        d_terms(lv, &b).iter().all(|t| t.rest.eps.iter().all(|e| lv.is_nu(*e)))
    });
    let rows: Vec<SparseVec<BigInt>> = par::map_indexed(ix.dim(), |i| d_iter(&ys, &yt, &ix.symbol(i)).map(|v| integer_row(&v)))
        .into_iter()
        .collect::<Result<_>>()?;
    let square = ix.dim() == yt.dim();
    let mut rank = 0;
    if square {
        let prime = fast_path_primes(lv.n()).next().expect("prime");
        rank = crate::exactlinalg::rank_mod_int(&rows, yt.dim(), prime);
    }
    if rank != yt.dim() {
        rank = rank_integer(&rows, yt.dim(), &RankOptions { avoid: lv.n(), ..Default::default() }).rank;
    }
    Ok(BasisReport { dim_w: ix.dim(), dim_y: yt.dim(), rank, stable, bijective: square && rank == yt.dim() && stable })
}

/// For all x in mu_{N/q} and 0 <= n <= M: Σ_{η in U(n)} θ̃(ηx) lies in
/// A(n+1) = span{Σ_{η in U(n+1)} ⟦ηε⟧ : ε in nu_N}, with A(M+1) = 0.
pub fn theta_sum_check(lv: &Level) -> Result<bool> {
    let sf = lv.special()?;
    let m = ModpModel::new(lv)?;
    let field = PrimeField::new(sf.p)?;
    let nu = lv.nu_elements()?;
    let pos = |e: UnityRoot| ((e.0 - 1) / sf.q) as usize;
    let order = lv.n() / sf.q;
    for n in 0..=sf.m {
        let mut span = Rref::new(field, nu.len());
        if n < sf.m {
            for &e in &nu {
                let pairs = lv.subgroup_u(n + 1)?.into_iter().map(|eta| (pos(lv.mul(eta, e)), 1)).collect();
                span.insert(&SparseVec::from_pairs(&field, pairs));
            }
        }
        let un = lv.subgroup_u(n)?;
        for x in lv.mu(order) {
            let mut pairs = Vec::new();
            for &eta in &un {
                pairs.extend(m.table.tilde(lv.mul(eta, x)).iter().map(|(e, c)| (pos(*e), *c)));
            }
            if !span.contains(&SparseVec::from_pairs(&field, pairs)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// ℰ_d commutes with the diagonal action of every σ in G on (𝒲^{⊗d})_k.
pub fn galois_equivariance_check(lv: &Level, k: u32, d: usize) -> Result<bool> {
    let m = ModpModel::new(lv)?;
    let ix = nu_indexer(lv, k, d)?;
    let act = |v: &ModpVec, g| v.iter().map(|(b, c)| (b.act(lv, g), *c)).collect::<ModpVec>();
    for g in lv.galois_group()? {
        for b in ix.symbols() {
            let lhs = m.e_map(&b.act(lv, g))?;
            let rhs = act(&m.e_map(&b)?, g);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// E_d over Q reduced mod p agrees with the mod-p formula on every basis
/// vector, and every output is p-integral.
pub fn modp_reduction_check(lv: &Level, k: u32, d: usize) -> Result<bool> {
    let m = ModpModel::new(lv)?;
    let ix = nu_indexer(lv, k, d)?;
    for b in ix.symbols() {
        let exact = e_map(lv, &b)?;
        match reduce_modp(&exact, m.p()) {
            Some(v) if v == m.e_map(&b)? => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

pub fn basis_symbol(lv: &Level, eps: &[u64], ls: &[u32]) -> Result<BiSeq> {
    BiSeq::new(eps.iter().map(|&e| lv.root(e as i64)).collect(), ls.to_vec())
}
