//! Graph-level views: mutual arcs, congruence-refined arcs, bounded
//! empirical scans, increasing chains, directed polygons, and whole
//! subgraph export. Everything rides on the single-arc deciders; bounded
//! ops say exactly what they scanned in their verdicts.

use crate::arcs::{
    decide_arc, decide_prime_count_arc, decide_sb_exact, eval, witness_sb, witness_tau, ArcVerdict,
    FunctionId, RefutationCertificate, SbExactOutcome, Witness,
};
use crate::error::{Error, Result};
use crate::{ExplorationBudget, Natural};
use num_traits::ToPrimitive;
use std::collections::{BTreeSet, HashMap};

/// One decided ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcEdge {
    pub from: Natural,
    pub to: Natural,
    pub verdict: ArcVerdict,
}

/// Directed cycle of distinct vertices in which every arc is proven.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    pub vertices: Vec<Natural>,
}

/// Combined status of the two directed arcs between a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FriendsOutcome {
    /// Both arcs proven.
    Mutual,
    /// At least one arc refuted.
    NotMutual,
    /// Neither refuted, at least one unknown.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriendsVerdict {
    pub forward: ArcVerdict,
    pub backward: ArcVerdict,
}

impl FriendsVerdict {
    pub fn outcome(&self) -> FriendsOutcome {
        if self.forward.is_proven() && self.backward.is_proven() {
            FriendsOutcome::Mutual
        } else if self.forward.is_refuted() || self.backward.is_refuted() {
            FriendsOutcome::NotMutual
        } else {
            FriendsOutcome::Undetermined
        }
    }
}

/// Decides both directed arcs between a and b.
pub fn friends(
    f: &FunctionId,
    a: &Natural,
    b: &Natural,
    budget: &ExplorationBudget,
) -> Result<FriendsVerdict> {
    Ok(FriendsVerdict {
        forward: decide_arc(f, a, b, budget)?,
        backward: decide_arc(f, b, a, budget)?,
    })
}

/// Arc refined to a residue class: does some N = r (mod n) reach u?
/// Residue 0 routes to the constructive machinery (so witnesses match
/// the plain deciders); nonzero digit-sum residues go to the exact table;
/// everything else is a bounded scan that can only prove or pass.
pub fn congruence_arc(
    f: &FunctionId,
    n: &Natural,
    r: &Natural,
    u: &Natural,
    budget: &ExplorationBudget,
) -> Result<ArcVerdict> {
    let n64 = budget.checked_input("n", n)?;
    if n64 == 0 {
        return Err(Error::ZeroNotPositive { what: "n" });
    }
    let r64 = match r.to_u64() {
        Some(v) if v < n64 => v,
        _ => {
            return Err(Error::ResidueOutOfRange {
                r: r.to_string(),
                n: n64.to_string(),
            });
        }
    };

    if r64 == 0 {
        return match f {
            FunctionId::SumDigits { base } => witness_sb(*base, n, u, budget),
            FunctionId::Tau => witness_tau(n, u, budget),
            FunctionId::Omega | FunctionId::BigOmega => decide_prime_count_arc(f, n, u, budget),
            FunctionId::HappySum { .. } => decide_arc(f, n, u, budget),
        };
    }

    if let FunctionId::SumDigits { base } = f {
        return Ok(match decide_sb_exact(*base, n, u, r, budget)? {
            SbExactOutcome::Member(witness) => ArcVerdict::Proven { witness },
            SbExactOutcome::NonMember(params) => ArcVerdict::Refuted {
                certificate: RefutationCertificate::ModularExhaustion { params },
            },
            SbExactOutcome::OverBudget { detail } => ArcVerdict::Unknown {
                budget_spent: detail,
            },
        });
    }

    // No exact theory for the rest on a shifted class: scan it.
    for k in 0..budget.oracle_k_max {
        let cand = r64 as u128 + k as u128 * n64 as u128;
        if f.needs_factorization() && cand > budget.input_cap as u128 {
            return Ok(ArcVerdict::Unknown {
                budget_spent: format!(
                    "scanned the class up to the input cap {} without a hit",
                    budget.input_cap
                ),
            });
        }
        let cand_big = Natural::from(cand);
        if eval(f, &cand_big, budget)? == *u {
            return Ok(ArcVerdict::Proven {
                witness: Witness::Value(cand_big),
            });
        }
    }
    Ok(ArcVerdict::Unknown {
        budget_spent: format!(
            "scanned {} members of the class without a hit",
            budget.oracle_k_max
        ),
    })
}

/// Bounded arc: is g(j*n) = u for some j <= k? Proven with the smallest
/// such multiple, else refuted for the scanned prefix only (the
/// certificate records the limit).
pub fn k_bounded_arc(
    f: &FunctionId,
    n: &Natural,
    u: &Natural,
    k: u64,
    budget: &ExplorationBudget,
) -> Result<ArcVerdict> {
    if k == 0 {
        return Err(Error::ZeroNotPositive { what: "k" });
    }
    let n64 = budget.checked_input("n", n)?;
    if n64 == 0 {
        return Err(Error::ZeroNotPositive { what: "n" });
    }
    for j in 1..=k {
        let cand = j as u128 * n64 as u128;
        if f.needs_factorization() && cand > budget.input_cap as u128 {
            return Err(Error::CapExceeded {
                what: "j*n",
                value: cand.to_string(),
                cap: budget.input_cap,
            });
        }
        let cand_big = Natural::from(cand);
        if eval(f, &cand_big, budget)? == *u {
            return Ok(ArcVerdict::Proven {
                witness: Witness::Value(cand_big),
            });
        }
    }
    Ok(ArcVerdict::Refuted {
        certificate: RefutationCertificate::ExhaustiveScan {
            limit: Natural::from(k as u128 * n64 as u128),
        },
    })
}

/// Longest strictly increasing chain from `start` found within `steps`
/// arcs, where successors of v are the values g(j*v) for j <= k that
/// exceed v. Depth-first, smallest successor first, with a global node
/// budget; the first chain of maximal length wins, so results are
/// deterministic.
pub fn k_bounded_chain(
    f: &FunctionId,
    start: &Natural,
    k: u64,
    steps: u64,
    budget: &ExplorationBudget,
) -> Result<Vec<Natural>> {
    if k == 0 {
        return Err(Error::ZeroNotPositive { what: "k" });
    }
    let start64 = budget.checked_input("start", start)?;
    if start64 == 0 {
        return Err(Error::ZeroNotPositive { what: "start" });
    }

    fn successors(
        f: &FunctionId,
        v: u64,
        k: u64,
        budget: &ExplorationBudget,
    ) -> Result<BTreeSet<u64>> {
        let mut out = BTreeSet::new();
        for j in 1..=k {
            let cand = j as u128 * v as u128;
            if cand > budget.input_cap as u128 {
                break;
            }
            let value = eval(f, &Natural::from(cand), budget)?;
            if let Some(value) = value.to_u64() {
                if value > v && value <= budget.input_cap {
                    out.insert(value);
                }
            }
        }
        Ok(out)
    }

    fn descend(
        f: &FunctionId,
        path: &mut Vec<u64>,
        best: &mut Vec<u64>,
        steps_left: u64,
        nodes_left: &mut u64,
        k: u64,
        budget: &ExplorationBudget,
    ) -> Result<()> {
        if path.len() > best.len() {
            *best = path.clone();
        }
        if steps_left == 0 || *nodes_left == 0 {
            return Ok(());
        }
        *nodes_left -= 1;
        let last = *path.last().unwrap();
        for next in successors(f, last, k, budget)? {
            path.push(next);
            descend(f, path, best, steps_left - 1, nodes_left, k, budget)?;
            path.pop();
            if *nodes_left == 0 {
                break;
            }
        }
        Ok(())
    }

    let mut path = vec![start64];
    let mut best = vec![start64];
    let mut nodes_left = budget.oracle_k_max;
    descend(f, &mut path, &mut best, steps, &mut nodes_left, k, budget)?;
    Ok(best.into_iter().map(Natural::from).collect())
}

/// All directed cycles of the given length over vertices 1..=vertex_bound
/// in which every arc is proven. Cycles are listed with their smallest
/// vertex first and enumerated in lexicographic order; the two directions
/// of one vertex set count as distinct cycles when both close. Unknown
/// arcs are treated as absent (a polygon is a claim that every edge is
/// proven), so the result can only under-report where deciders pass.
pub fn find_polygons(
    f: &FunctionId,
    vertex_bound: u64,
    length: u64,
    max_results: usize,
    budget: &ExplorationBudget,
) -> Result<Vec<Polygon>> {
    if length < 3 {
        return Err(Error::PolygonTooShort { length });
    }
    if vertex_bound == 0 {
        return Err(Error::ZeroNotPositive {
            what: "vertex_bound",
        });
    }
    if vertex_bound > budget.input_cap {
        return Err(Error::CapExceeded {
            what: "vertex_bound",
            value: vertex_bound.to_string(),
            cap: budget.input_cap,
        });
    }

    struct Search<'a> {
        f: &'a FunctionId,
        bound: u64,
        length: usize,
        max_results: usize,
        budget: &'a ExplorationBudget,
        edge_cache: HashMap<(u64, u64), bool>,
        found: Vec<Polygon>,
    }

    impl Search<'_> {
        fn edge(&mut self, from: u64, to: u64) -> Result<bool> {
            if let Some(&known) = self.edge_cache.get(&(from, to)) {
                return Ok(known);
            }
            let verdict = decide_arc(
                self.f,
                &Natural::from(from),
                &Natural::from(to),
                self.budget,
            )?;
            let proven = verdict.is_proven();
            self.edge_cache.insert((from, to), proven);
            Ok(proven)
        }

        fn extend(&mut self, path: &mut Vec<u64>) -> Result<()> {
            if self.found.len() >= self.max_results {
                return Ok(());
            }
            let head = path[0];
            let last = *path.last().unwrap();
            if path.len() == self.length {
                if self.edge(last, head)? {
                    self.found.push(Polygon {
                        vertices: path.iter().copied().map(Natural::from).collect(),
                    });
                }
                return Ok(());
            }
            // Canonical form: the head is the smallest vertex, so other
            // vertices range above it.
            for next in head + 1..=self.bound {
                if path.contains(&next) {
                    continue;
                }
                if self.edge(last, next)? {
                    path.push(next);
                    self.extend(path)?;
                    path.pop();
                    if self.found.len() >= self.max_results {
                        return Ok(());
                    }
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        f,
        bound: vertex_bound,
        length: length as usize,
        max_results,
        budget,
        edge_cache: HashMap::new(),
        found: Vec::new(),
    };
    for head in 1..=vertex_bound {
        if search.found.len() >= max_results {
            break;
        }
        let mut path = vec![head];
        search.extend(&mut path)?;
    }
    Ok(search.found)
}

/// Every ordered pair over 1..=vertex_bound decided, row by row. Loops
/// (n, n) are included: an arc from n to itself is a meaningful question.
pub fn subgraph_export(
    f: &FunctionId,
    vertex_bound: u64,
    budget: &ExplorationBudget,
) -> Result<Vec<ArcEdge>> {
    if vertex_bound == 0 {
        return Err(Error::ZeroNotPositive {
            what: "vertex_bound",
        });
    }
    let mut edges = Vec::with_capacity((vertex_bound * vertex_bound) as usize);
    for n in 1..=vertex_bound {
        for u in 1..=vertex_bound {
            let from = Natural::from(n);
            let to = Natural::from(u);
            let verdict = decide_arc(f, &from, &to, budget)?;
            edges.push(ArcEdge { from, to, verdict });
        }
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(x: u64) -> Natural {
        Natural::from(x)
    }

    fn budget() -> ExplorationBudget {
        ExplorationBudget::default()
    }

    #[test]
    fn friends_mutual_under_distinct_count() {
        // omega arcs are thresholds, so 2 and 3 reach each other.
        let v = friends(&FunctionId::Omega, &nat(2), &nat(3), &budget()).unwrap();
        assert_eq!(v.outcome(), FriendsOutcome::Mutual);
    }

    #[test]
    fn friends_not_mutual_for_digit_sums() {
        // 33 -> 3 is refuted while 3 -> 33 is proven.
        let f = FunctionId::SumDigits { base: 10 };
        let v = friends(&f, &nat(3), &nat(33), &budget()).unwrap();
        assert_eq!(v.outcome(), FriendsOutcome::NotMutual);
        assert!(v.forward.is_proven());
        assert!(v.backward.is_refuted());
    }

    #[test]
    fn congruence_residue_zero_matches_plain_witness() {
        let f = FunctionId::SumDigits { base: 10 };
        match congruence_arc(&f, &nat(3), &nat(0), &nat(6), &budget()).unwrap() {
            ArcVerdict::Proven { witness } => assert_eq!(witness.value(), nat(33)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn congruence_nonzero_digit_sum() {
        let f = FunctionId::SumDigits { base: 10 };
        // Digit sums track N mod 3, so the class of 2 can reach 5 but
        // never anything = 1 (mod 3).
        match congruence_arc(&f, &nat(3), &nat(2), &nat(5), &budget()).unwrap() {
            ArcVerdict::Proven { witness } => {
                let v = witness.value();
                assert_eq!((&v % &nat(3)).to_u64(), Some(2));
                assert_eq!(crate::arith::power_digit_sum(&v, 10, 1).unwrap(), nat(5));
            }
            other => panic!("{other:?}"),
        }
        // Digit sums of 1 mod 3 numbers are 1 mod 3; 6 is impossible.
        match congruence_arc(&f, &nat(3), &nat(1), &nat(6), &budget()).unwrap() {
            ArcVerdict::Refuted { .. } => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn congruence_scan_for_factor_functions() {
        // tau(N) = 4 with N = 1 (mod 3): N = 10 works.
        match congruence_arc(&FunctionId::Tau, &nat(3), &nat(1), &nat(4), &budget()).unwrap() {
            ArcVerdict::Proven { witness } => {
                assert_eq!(witness.value(), nat(10));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bounded_arc_finds_and_refutes() {
        let f = FunctionId::SumDigits { base: 10 };
        match k_bounded_arc(&f, &nat(3), &nat(6), 5, &budget()).unwrap() {
            ArcVerdict::Proven { witness } => assert_eq!(witness.value(), nat(6)),
            other => panic!("{other:?}"),
        }
        match k_bounded_arc(&f, &nat(33), &nat(3), 100, &budget()).unwrap() {
            ArcVerdict::Refuted {
                certificate: RefutationCertificate::ExhaustiveScan { limit },
            } => assert_eq!(limit, nat(3300)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn chain_dead_end_is_just_the_start() {
        let f = FunctionId::SumDigits { base: 10 };
        let chain = k_bounded_chain(&f, &nat(33), 1, 5, &budget()).unwrap();
        assert_eq!(chain, vec![nat(33)]);
    }

    #[test]
    fn chain_climbs_when_it_can() {
        // From 1 with k = 100 under digit sum: successors of 1 include
        // digit sums up to s(100) territory; chains can climb a few steps.
        let f = FunctionId::SumDigits { base: 10 };
        let chain = k_bounded_chain(&f, &nat(1), 100, 3, &budget()).unwrap();
        assert!(chain.len() >= 2, "{chain:?}");
        for pair in chain.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn polygons_under_distinct_count() {
        let got = find_polygons(&FunctionId::Omega, 10, 3, 1000, &budget()).unwrap();
        assert!(got
            .iter()
            .any(|p| p.vertices == vec![nat(2), nat(3), nat(5)]));
        // Every reported polygon closes with proven arcs only.
        for p in &got {
            let k = p.vertices.len();
            for i in 0..k {
                let a = &p.vertices[i];
                let b = &p.vertices[(i + 1) % k];
                assert!(decide_arc(&FunctionId::Omega, a, b, &budget())
                    .unwrap()
                    .is_proven());
            }
        }
    }

    #[test]
    fn polygon_length_validated() {
        assert!(find_polygons(&FunctionId::Omega, 10, 2, 10, &budget()).is_err());
    }

    #[test]
    fn subgraph_is_complete_and_ordered() {
        let f = FunctionId::SumDigits { base: 10 };
        let edges = subgraph_export(&f, 4, &budget()).unwrap();
        assert_eq!(edges.len(), 16);
        assert_eq!(edges[0].from, nat(1));
        assert_eq!(edges[0].to, nat(1));
        assert_eq!(edges[15].from, nat(4));
        assert_eq!(edges[15].to, nat(4));
        for e in &edges {
            assert!(!e.verdict.is_unknown(), "digit sums always decide");
        }
    }
}
