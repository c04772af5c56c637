use super::monomial::{subsets, Bidegree, Genus, Monomial};

/// Every monomial of the given bidegree, ordered by (psi count, alpha power, psi mask).
pub fn monomial_basis(g: Genus, bd: Bidegree) -> Vec<Monomial> {
    let mut out = Vec::new();
    if bd.chern % 2 == 1 {
        return out;
    }
    let half = bd.chern / 2;
    for s in 0..=g.num_psi().min(half) {
        // 2a + 4b = coh - 3s and a + b = chern/2 - s
        let Some(rest) = bd.coh.checked_sub(3 * s) else {
            break;
        };
        let n = half - s;
        if rest % 2 == 1 || rest / 2 < n {
            continue;
        }
        let b = rest / 2 - n;
        if b > n {
            continue;
        }
        let a = n - b;
        out.extend(subsets(g.num_psi(), s).map(|mask| Monomial::new(a, b, mask)));
    }
    out
}

/// Monomials of cohomological degree `coh` and Chern degree at most `ell`.
pub fn chern_filter_basis(g: Genus, coh: u32, ell: u32) -> Vec<Monomial> {
    (0..=ell)
        .step_by(2)
        .flat_map(|c| monomial_basis(g, Bidegree::new(coh, c)))
        .collect()
}

/// Bidegrees with a nonempty slice and `coh <= max_coh`, ordered by (coh, chern).
pub fn bidegrees(g: Genus, max_coh: u32) -> Vec<Bidegree> {
    let mut out = Vec::new();
    for coh in 0..=max_coh {
        for chern in (0..=coh).step_by(2) {
            let bd = Bidegree::new(coh, chern);
            if slice_nonempty(g, bd) {
                out.push(bd);
            }
        }
    }
    out
}

fn slice_nonempty(g: Genus, bd: Bidegree) -> bool {
    if bd.chern % 2 == 1 {
        return false;
    }
    let half = bd.chern / 2;
    (0..=g.num_psi().min(half)).any(|s| {
        bd.coh.checked_sub(3 * s).is_some_and(|rest| {
            let n = half - s;
            rest % 2 == 0 && rest / 2 >= n && rest / 2 - n <= n
        })
    })
}

/// All monomials with `coh <= max_coh`, grouped by bidegree in (coh, chern) order.
pub fn monomials_up_to(g: Genus, max_coh: u32) -> Vec<(Bidegree, Vec<Monomial>)> {
    bidegrees(g, max_coh)
        .into_iter()
        .map(|bd| (bd, monomial_basis(g, bd)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    #[test]
    fn small_slices() {
        assert_eq!(
            monomial_basis(g(2), Bidegree::new(4, 4)),
            vec![Monomial::new(2, 0, 0)]
        );
        let psis = monomial_basis(g(2), Bidegree::new(3, 2));
        assert_eq!(psis.len(), 4);
        assert!(psis.iter().all(|m| m.psi_count() == 1));
        assert!(monomial_basis(g(3), Bidegree::new(1, 1)).is_empty());
        assert_eq!(monomial_basis(g(2), Bidegree::new(6, 4)).len(), 7);
    }

    #[test]
    fn filtered_slices() {
        assert_eq!(chern_filter_basis(g(2), 4, 2), vec![Monomial::new(0, 1, 0)]);
        assert_eq!(
            chern_filter_basis(g(2), 4, 4),
            vec![Monomial::new(0, 1, 0), Monomial::new(2, 0, 0)]
        );
        assert_eq!(chern_filter_basis(g(2), 0, 0), vec![Monomial::ONE]);
    }

    #[test]
    fn degree_cone() {
        for genus in 2..=4 {
            for (bd, ms) in monomials_up_to(g(genus), 20) {
                assert!(!ms.is_empty());
                for m in ms {
                    assert_eq!(m.bidegree(), bd);
                    assert!(bd.chern <= bd.coh && bd.coh <= 2 * bd.chern);
                    let pure_alpha = m.b == 0 && m.psi == 0;
                    let pure_beta = m.a == 0 && m.psi == 0;
                    assert_eq!(bd.coh == bd.chern, pure_alpha);
                    assert_eq!(bd.coh == 2 * bd.chern, pure_beta);
                }
            }
        }
    }

    #[test]
    fn slices_partition_monomials() {
        // count monomials of coh <= 9 at g = 2 by brute force
        let mut brute = 0;
        for a in 0..=4 {
            for b in 0..=2 {
                for s in 0u32..16 {
                    if 2 * a + 4 * b + 3 * s.count_ones() <= 9 {
                        brute += 1;
                    }
                }
            }
        }
        let total: usize = monomials_up_to(g(2), 9).iter().map(|(_, v)| v.len()).sum();
        assert_eq!(total, brute);
    }
}
