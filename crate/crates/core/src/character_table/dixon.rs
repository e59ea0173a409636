//! Dixon-Schneider: simultaneous eigenvectors of the class matrices over GF(p),
//! followed by an exact lift of each character value to Q(zeta_e).

use super::{CharTable, CharTableError, ClassFunction};
use crate::exact_algebra::{dixon_prime, fp_discrete_root_table, BigRat, CycNum, PrimeField, RootTable};
use crate::group_engine::{ClassData, FinGroup};

/// `a[j][k][l] = #{x in C_j : x^-1 z_l in C_k}` for a fixed `z_l` in `C_l`, i.e. the
/// coefficient of the class sum `K_l` in `K_j K_k`.
pub fn class_structure_constants(g: &FinGroup, c: &ClassData) -> Vec<Vec<Vec<u64>>> {
    let r = c.len();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (j, cj) in c.classes.iter().enumerate() {
        for (l, cl) in c.classes.iter().enumerate() {
            let z = cl.representative;
            for &x in &cj.members {
                let y = g.mul(g.inv(x), z);
                a[j][c.class_of[y]][l] += 1;
            }
        }
    }
    a
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(f: &PrimeField, m: &mut [Vec<u64>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][col] != 0) else { continue };
        m.swap(r, p);
        let s = f.inv(m[r][col]);
        m[r].iter_mut().for_each(|v| *v = f.mul(*v, s));
        for i in 0..rows {
            if i != r && m[i][col] != 0 {
                let factor = m[i][col];
                let pivot = m[r].clone();
                for (v, &pv) in m[i].iter_mut().zip(&pivot) {
                    *v = f.sub(*v, f.mul(factor, pv));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Basis of `{x : m x = 0}`.
fn nullspace(f: &PrimeField, mut m: Vec<Vec<u64>>, cols: usize) -> Vec<Vec<u64>> {
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, m[i][fc]);
            }
            v
        })
        .collect()
}

/// Splits a subspace (RREF row basis) into eigenspaces of `mat` restricted to it.
/// Returns `None` if the restriction is not diagonalizable over GF(p).
fn split(f: &PrimeField, basis: &[Vec<u64>], pivots: &[usize], mat: &[Vec<u64>]) -> Option<Vec<Vec<Vec<u64>>>> {
    let d = basis.len();
    let r = mat.len();
    // restricted[i][m]: coordinate m of mat * b_i
    let restricted: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            let image: Vec<u64> = (0..r).map(|k| (0..r).fold(0, |acc, l| f.add(acc, f.mul(mat[k][l], b[l])))).collect();
            pivots.iter().map(|&p| image[p]).collect()
        })
        .collect();
    let mut parts = Vec::new();
    let mut total = 0;
    for lambda in 0..f.modulus() {
        // c (R - lambda I) = 0  <=>  (R - lambda I)^T c^T = 0
        let system: Vec<Vec<u64>> = (0..d)
            .map(|m| (0..d).map(|i| if i == m { f.sub(restricted[i][m], lambda) } else { restricted[i][m] }).collect())
            .collect();
        let coeffs = nullspace(f, system, d);
        if coeffs.is_empty() {
            continue;
        }
        total += coeffs.len();
        let vectors: Vec<Vec<u64>> = coeffs
            .iter()
            .map(|c| (0..r).map(|k| (0..d).fold(0, |s, i| f.add(s, f.mul(c[i], basis[i][k])))).collect())
            .collect();
        parts.push(vectors);
        if total == d {
            break;
        }
    }
    (total == d).then_some(parts)
}

fn sqrt_small(f: &PrimeField, square: u64, bound: u64) -> Option<u64> {
    (1..=bound).find(|&d| f.mul(d % f.modulus(), d % f.modulus()) == square)
}

pub(super) fn compute(g: &FinGroup, c: &ClassData) -> Result<CharTable, CharTableError> {
    let r = c.len();
    let n = g.order() as u64;
    let e = c.exponent() as u64;
    let p = dixon_prime(e, n);
    let roots = fp_discrete_root_table(p, e)?;
    let f = roots.field;
    let consts = class_structure_constants(g, c);

    // class matrix M_j acts on column vectors: (M_j)[k][l] = a[j][k][l]
    let mats: Vec<Vec<Vec<u64>>> =
        consts.iter().map(|aj| aj.iter().map(|row| row.iter().map(|&v| v % p).collect()).collect()).collect();

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|k| (i == k) as u64).collect()).collect()];
    for mat in &mats {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for mut space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let pivots = rref(&f, &mut space);
            let parts = split(&f, &space, &pivots, mat).ok_or(CharTableError::NotDiagonalizable { prime: p })?;
            next.extend(parts);
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(CharTableError::SplittingFailure { prime: p, dimensions: spaces.iter().map(Vec::len).collect() });
    }

    let sizes = c.sizes();
    let bound = (n as f64).sqrt().floor() as u64 + 1;
    let mut rows = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(CharTableError::DegreeRecovery { prime: p });
        }
        let s0 = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, s0)).collect();
        // sum_k w_k w_k* / |C_k| = |G| / deg^2
        let norm = (0..r).fold(0, |acc, k| {
            let term = f.mul(f.mul(w[k], w[c.inverse_class(k)]), f.inv(sizes[k] as u64 % p));
            f.add(acc, term)
        });
        if norm == 0 {
            return Err(CharTableError::DegreeRecovery { prime: p });
        }
        let deg_sq = f.mul(n % p, f.inv(norm));
        let deg = sqrt_small(&f, deg_sq, bound.min(p - 1)).ok_or(CharTableError::DegreeRecovery { prime: p })?;
        let modular: Vec<u64> = (0..r).map(|k| f.mul(f.mul(w[k], deg), f.inv(sizes[k] as u64 % p))).collect();
        rows.push(lift_row(&roots, c, &modular, deg)?);
    }

    let trivial = ClassFunction::constant(r, CycNum::one(e as u32));
    rows.sort_by(|a, b| {
        let key = |x: &ClassFunction| (x != &trivial, x.degree());
        key(a).cmp(&key(b)).then_with(|| a.canonical_cmp(b))
    });
    Ok(CharTable {
        rows,
        class_sizes: sizes,
        class_orders: c.orders(),
        group_order: g.order(),
        conductor: e as u32,
        prime: p,
    })
}

/// Recovers exact values from residues: for a class of order `o`, the multiplicity
/// of the eigenvalue `zeta_o^l` is `(1/o) sum_s chi(g^s) mu^(-ls)` with `mu = omega^(e/o)`.
fn lift_row(roots: &RootTable, c: &ClassData, modular: &[u64], deg: u64) -> Result<ClassFunction, CharTableError> {
    let f = roots.field;
    let e = roots.exponent as i64;
    let values = (0..c.len())
        .map(|k| {
            let o = c.classes[k].element_order as i64;
            let step = e / o;
            let inv_o = f.inv(o as u64 % f.modulus());
            let mut terms = Vec::new();
            let mut total = 0u64;
            for l in 0..o {
                let sum = (0..o).fold(0, |acc, s| {
                    let val = modular[c.power(k, s)];
                    f.add(acc, f.mul(val, roots.power(-(l * s) * step)))
                });
                let m = f.mul(sum, inv_o);
                if m > deg {
                    return Err(CharTableError::LiftFailure { class: k, prime: f.modulus() });
                }
                total += m;
                if m > 0 {
                    terms.push((l * step, BigRat::from_integer((m as i64).into())));
                }
            }
            if total != deg {
                return Err(CharTableError::LiftFailure { class: k, prime: f.modulus() });
            }
            Ok(CycNum::from_exponent_terms(e as u32, terms))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ClassFunction { values })
}
