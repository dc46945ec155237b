//! Counting with monomial submodules: standard monomials of an Artinian
//! quotient, and Hilbert-series growth of the general case.

use crate::poly::Monomial;

/// Asymptotic size of a graded quotient `R^r / M`: `dim_k` of the degree
/// `≤ t` part grows like `multiplicity · t^krull_dim / krull_dim!`.
/// The zero module has multiplicity 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Growth {
    pub krull_dim: u32,
    pub multiplicity: u64,
}

/// Number of monomials in `n` variables divisible by none of `gens`.
/// `gens` must contain a pure power of every variable (or 1).
pub fn count_standard_monomials(n: usize, gens: &[Monomial]) -> u64 {
    if gens.iter().any(Monomial::is_one) {
        return 0;
    }
    if n == 0 {
        return 1;
    }
    let bound = |i: usize| {
        gens.iter()
            .filter(|g| g.pure_power_variable() == Some(i))
            .map(|g| g.exponents()[i])
            .min()
            .expect("quotient is not finite-dimensional")
    };
    let last = n - 1;
    let mut total = 0;
    for e in 0..bound(last) {
        // slice x_last = e: generators with at most e in the last variable
        let slice: Vec<Monomial> = gens
            .iter()
            .filter(|g| g.exponents()[last] <= e)
            .map(|g| Monomial::from_exponents(&g.exponents()[..last]))
            .collect();
        total += count_standard_monomials(last, &slice);
    }
    total
}

type IntPoly = Vec<i64>;

fn poly_add(a: &mut IntPoly, b: &IntPoly, sign: i64, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] += sign * c;
    }
}

fn trim(mut a: IntPoly) -> IntPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of `k[x] / (gens)`,
/// by pivoting on a variable power.
fn numerator(gens: Vec<Monomial>) -> IntPoly {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(Monomial::is_one) {
        return Vec::new();
    }
    let Some(mixed) = gens.iter().find(|g| g.pure_power_variable().is_none()) else {
        // complete intersection of pure powers
        let mut acc: IntPoly = vec![1];
        for g in &gens {
            let mut next = acc.clone();
            poly_add(&mut next, &acc, -1, g.degree() as usize);
            acc = next;
        }
        return trim(acc);
    };
    let i = mixed.exponents().iter().position(|&e| e > 0).unwrap();
    let e = mixed.exponents()[i];
    let mut pe = vec![0u32; mixed.nvars()];
    pe[i] = e;
    let pivot = Monomial::from_exponents(&pe);
    // N(I) = N(I + P) + t^deg(P) · N(I : P)
    let mut with = gens.clone();
    with.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut ex = g.exponents().to_vec();
            ex[i] = ex[i].saturating_sub(e);
            Monomial::from_exponents(&ex)
        })
        .collect();
    let mut out = numerator(with);
    poly_add(&mut out, &numerator(colon), 1, e as usize);
    trim(out)
}

/// Growth of `⊕_j k[x] / L_j` for monomial ideals `L_j` in `n` variables.
pub fn growth(n: usize, per_position: &[Vec<Monomial>]) -> Growth {
    let mut total: IntPoly = Vec::new();
    for gens in per_position {
        poly_add(&mut total, &numerator(gens.clone()), 1, 0);
    }
    let mut q = trim(total);
    if q.is_empty() {
        return Growth { krull_dim: 0, multiplicity: 0 };
    }
    let mut dim = n as u32;
    // divide by (1 - t) while t = 1 is a root
    while q.iter().sum::<i64>() == 0 {
        let mut quo = vec![0i64; q.len() - 1];
        let mut carry = 0;
        for k in 0..quo.len() {
            carry += q[k];
            quo[k] = carry;
        }
        q = trim(quo);
        dim -= 1;
    }
    let mult = q.iter().sum::<i64>();
    debug_assert!(mult > 0, "Hilbert numerator with negative value at 1");
    Growth { krull_dim: dim, multiplicity: mult as u64 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn staircase_counts() {
        assert_eq!(count_standard_monomials(2, &[m(&[2, 0]), m(&[0, 3])]), 6);
        assert_eq!(count_standard_monomials(2, &[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]), 3);
        assert_eq!(count_standard_monomials(1, &[m(&[0])]), 0);
    }

    #[test]
    fn growth_of_simple_quotients() {
        // k[x,y]/(x): a line
        assert_eq!(growth(2, &[vec![m(&[1, 0])]]), Growth { krull_dim: 1, multiplicity: 1 });
        // k[x,y]/(xy): two lines
        assert_eq!(growth(2, &[vec![m(&[1, 1])]]), Growth { krull_dim: 1, multiplicity: 2 });
        // k[x,y]/(x^2, y^3) ⊕ k[x,y]
        assert_eq!(growth(2, &[vec![m(&[2, 0]), m(&[0, 3])], vec![]]), Growth { krull_dim: 2, multiplicity: 1 });
        // Artinian: multiplicity is the length
        assert_eq!(growth(2, &[vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]]), Growth { krull_dim: 0, multiplicity: 3 });
        assert_eq!(growth(2, &[vec![m(&[0, 0])]]), Growth { krull_dim: 0, multiplicity: 0 });
    }
}
