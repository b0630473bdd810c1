//! Enumeration of families of functions subject to commuting-square
//! constraints.
//!
//! Both natural-transformation enumeration and connecting-morphism
//! enumeration are instances of the same problem: assign to each *site* a
//! function `domain → codomain` so that for every constraint
//! `post ∘ c_src = c_dst ∘ pre` the square commutes. The search assigns
//! whole sites in ascending constraint-density order and propagates each
//! square through forced values (incoming) and allowed-value filters
//! (outgoing) instead of enumerating the blind product.

use std::collections::BTreeMap;

use crate::ids::Elem;

#[derive(Clone, Debug)]
pub struct Site {
    pub key: String,
    pub domain: Vec<Elem>,
    pub codomain: Vec<Elem>,
}

/// Requires `c_dst(pre(x)) = post(c_src(x))` for every `x` in the source
/// site's domain.
#[derive(Clone, Debug)]
pub struct SquareConstraint {
    pub src: usize,
    pub dst: usize,
    pub pre: BTreeMap<Elem, Elem>,
    pub post: BTreeMap<Elem, Elem>,
}

type Assignment = BTreeMap<Elem, Elem>;

/// All solutions, in canonical (lexicographic on the per-site tables, sites
/// in input order) order regardless of the internal search order.
pub fn solve_squares(sites: &[Site], constraints: &[SquareConstraint]) -> Vec<Vec<Assignment>> {
    let mut density = vec![0usize; sites.len()];
    for c in constraints {
        density[c.src] += 1;
        if c.dst != c.src {
            density[c.dst] += 1;
        }
    }
    let mut order: Vec<usize> = (0..sites.len()).collect();
    order.sort_by(|&a, &b| {
        density[a]
            .cmp(&density[b])
            .then_with(|| sites[a].key.cmp(&sites[b].key))
    });

    let mut assigned: Vec<Option<Assignment>> = vec![None; sites.len()];
    let mut solutions = Vec::new();
    assign_site(
        sites,
        constraints,
        &order,
        0,
        &mut assigned,
        &mut solutions,
    );
    solutions.sort();
    solutions
}

fn assign_site(
    sites: &[Site],
    constraints: &[SquareConstraint],
    order: &[usize],
    depth: usize,
    assigned: &mut Vec<Option<Assignment>>,
    solutions: &mut Vec<Vec<Assignment>>,
) {
    if depth == order.len() {
        solutions.push(
            assigned
                .iter()
                .map(|a| a.clone().expect("all sites assigned"))
                .collect(),
        );
        return;
    }
    let site_idx = order[depth];
    let site = &sites[site_idx];

    // Positions forced by constraints out of already-assigned sites.
    let mut forced: BTreeMap<Elem, Elem> = BTreeMap::new();
    for c in constraints
        .iter()
        .filter(|c| c.dst == site_idx && c.src != site_idx)
    {
        let Some(src_table) = assigned[c.src].as_ref() else {
            continue;
        };
        for x in &sites[c.src].domain {
            let position = c.pre[x].clone();
            let value = c.post[&src_table[x]].clone();
            match forced.get(&position) {
                Some(existing) if existing != &value => return, // contradiction
                _ => {
                    forced.insert(position, value);
                }
            }
        }
    }

    // Per-position candidate lists, filtered by constraints into
    // already-assigned sites.
    let into_assigned: Vec<&SquareConstraint> = constraints
        .iter()
        .filter(|c| c.src == site_idx && c.dst != site_idx && assigned[c.dst].is_some())
        .collect();
    let positions = site.domain.clone();
    let mut allowed: Vec<Vec<Elem>> = Vec::with_capacity(positions.len());
    for x in &positions {
        let candidates: Vec<Elem> = site
            .codomain
            .iter()
            .filter(|v| {
                if let Some(f) = forced.get(x) {
                    if f != *v {
                        return false;
                    }
                }
                into_assigned.iter().all(|c| {
                    let dst_table = assigned[c.dst].as_ref().expect("dst assigned");
                    dst_table[&c.pre[x]] == c.post[*v]
                })
            })
            .cloned()
            .collect();
        if candidates.is_empty() {
            return;
        }
        allowed.push(candidates);
    }

    let self_constraints: Vec<&SquareConstraint> = constraints
        .iter()
        .filter(|c| c.src == site_idx && c.dst == site_idx)
        .collect();

    let mut partial = Assignment::new();
    fill_position(
        sites,
        constraints,
        order,
        depth,
        site_idx,
        &positions,
        &allowed,
        &self_constraints,
        0,
        &mut partial,
        assigned,
        solutions,
    );
}

#[allow(clippy::too_many_arguments)]
fn fill_position(
    sites: &[Site],
    constraints: &[SquareConstraint],
    order: &[usize],
    depth: usize,
    site_idx: usize,
    positions: &[Elem],
    allowed: &[Vec<Elem>],
    self_constraints: &[&SquareConstraint],
    pos: usize,
    partial: &mut Assignment,
    assigned: &mut Vec<Option<Assignment>>,
    solutions: &mut Vec<Vec<Assignment>>,
) {
    if pos == positions.len() {
        assigned[site_idx] = Some(partial.clone());
        assign_site(sites, constraints, order, depth + 1, assigned, solutions);
        assigned[site_idx] = None;
        return;
    }
    let x = &positions[pos];
    for v in &allowed[pos] {
        partial.insert(x.clone(), v.clone());
        // A self-square c(pre(y)) = post(c(y)) can be checked as soon as both
        // c(y) and c(pre(y)) are known.
        let ok = self_constraints.iter().all(|c| {
            positions.iter().all(|y| {
                let (Some(cy), Some(cpy)) = (partial.get(y), partial.get(&c.pre[y])) else {
                    return true;
                };
                cpy == &c.post[cy]
            })
        });
        if ok {
            fill_position(
                sites,
                constraints,
                order,
                depth,
                site_idx,
                positions,
                allowed,
                self_constraints,
                pos + 1,
                partial,
                assigned,
                solutions,
            );
        }
        partial.remove(x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> Elem {
        Elem::from(s)
    }

    #[test]
    fn unconstrained_site_enumerates_all_functions() {
        let sites = vec![Site {
            key: "a".into(),
            domain: vec![el("0"), el("1")],
            codomain: vec![el("x"), el("y")],
        }];
        let sols = solve_squares(&sites, &[]);
        assert_eq!(sols.len(), 4);
    }

    #[test]
    fn empty_domain_has_one_function() {
        let sites = vec![Site {
            key: "a".into(),
            domain: vec![],
            codomain: vec![el("x")],
        }];
        assert_eq!(solve_squares(&sites, &[]).len(), 1);
    }

    #[test]
    fn no_function_into_empty_codomain() {
        let sites = vec![Site {
            key: "a".into(),
            domain: vec![el("0")],
            codomain: vec![],
        }];
        assert!(solve_squares(&sites, &[]).is_empty());
    }

    #[test]
    fn square_constraint_prunes() {
        // pre and post both identities force c_b = c_a on a shared domain.
        let sites = vec![
            Site {
                key: "a".into(),
                domain: vec![el("0")],
                codomain: vec![el("x"), el("y")],
            },
            Site {
                key: "b".into(),
                domain: vec![el("0")],
                codomain: vec![el("x"), el("y")],
            },
        ];
        let constraints = vec![SquareConstraint {
            src: 0,
            dst: 1,
            pre: [(el("0"), el("0"))].into(),
            post: [(el("x"), el("x")), (el("y"), el("y"))].into(),
        }];
        let sols = solve_squares(&sites, &constraints);
        assert_eq!(sols.len(), 2);
        for sol in sols {
            assert_eq!(sol[0], sol[1]);
        }
    }

    #[test]
    fn self_constraint_enforced() {
        // One site, pre swapping 0 and 1, post identity: c(swap(x)) = c(x),
        // so c must be constant.
        let sites = vec![Site {
            key: "a".into(),
            domain: vec![el("0"), el("1")],
            codomain: vec![el("x"), el("y")],
        }];
        let constraints = vec![SquareConstraint {
            src: 0,
            dst: 0,
            pre: [(el("0"), el("1")), (el("1"), el("0"))].into(),
            post: [(el("x"), el("x")), (el("y"), el("y"))].into(),
        }];
        let sols = solve_squares(&sites, &constraints);
        assert_eq!(sols.len(), 2);
        for sol in &sols {
            assert_eq!(sol[0][&el("0")], sol[0][&el("1")]);
        }
    }

    #[test]
    fn no_sites_has_exactly_one_solution() {
        assert_eq!(solve_squares(&[], &[]).len(), 1);
    }
}
