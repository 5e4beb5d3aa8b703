//! Exhaustive, duplicate-free, lexicographic enumerations of small
//! structures: posets, unital magmas, graphs, characters and contact tables.

use std::sync::Arc;

use crate::finset::{FinitePoset, FiniteSet};
use crate::graphs::{ContactTable, FiniteGraph, UnitChoice};
use crate::structure::Character;
use crate::util::{advance, radix_product, saturating_pow, MixedRadix};

/// Partial orders on `{0, …, n-1}`, by their strict off-diagonal relation
/// read row-major as a binary number.
pub fn labeled_posets(n: usize) -> impl Iterator<Item = FinitePoset> {
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    MixedRadix::new(vec![2; cells.len()]).filter_map(move |bits| {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (&(i, j), &b) in cells.iter().zip(&bits) {
            leq[i * n + j] = b == 1;
        }
        FinitePoset::from_matrix(FiniteSet::range(n), leq).ok()
    })
}

/// Multiplication tables on `{0, …, n-1}` with `0` as two-sided unit. The
/// remaining `(n-1)²` cells vary lexicographically, row-major.
pub fn unital_magmas(n: usize) -> impl Iterator<Item = Vec<Vec<usize>>> {
    let free = n.saturating_sub(1);
    MixedRadix::new(vec![n; free * free]).map(move |cells| {
        let mut table = vec![vec![0; n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            row[0] = i;
        }
        if let Some(first) = table.first_mut() {
            *first = (0..n).collect();
        }
        for i in 1..n {
            for j in 1..n {
                table[i][j] = cells[(i - 1) * free + (j - 1)];
            }
        }
        table
    })
}

pub fn is_associative_table(table: &[Vec<usize>]) -> bool {
    let n = table.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| table[table[a][b]][c] == table[a][table[b][c]])))
}

/// Graphs on vertices `0..n` with at most `max_edges` edges per hom, by hom
/// sizes read row-major.
pub fn graphs(n: usize, max_edges: usize) -> impl Iterator<Item = FiniteGraph> {
    MixedRadix::new(vec![max_edges + 1; n * n]).map(move |sizes| FiniteGraph::from_hom_sizes(n, &sizes))
}

/// As [`graphs`], keeping only graphs with a loop at every vertex.
pub fn graphs_with_loops(n: usize, max_edges: usize) -> impl Iterator<Item = FiniteGraph> {
    graphs(n, max_edges).filter(FiniteGraph::has_loop_everywhere)
}

/// Number of characters [`characters`] yields.
pub fn count_characters(base: &FiniteGraph, max_size: usize, units: Option<&UnitChoice>) -> u128 {
    let n = base.vertex_count();
    MixedRadix::new(vec![max_size + 1; n])
        .map(|sizes| radix_product(action_radices(base, &sizes, units)))
        .fold(0u128, u128::saturating_add)
}

fn action_radices(base: &FiniteGraph, sizes: &[usize], units: Option<&UnitChoice>) -> Vec<usize> {
    base.edges()
        .flat_map(|e| {
            let fixed = units.is_some_and(|u| u.is_unit(e));
            let radix = if fixed { 1 } else { sizes[e.src] };
            std::iter::repeat_n(radix, sizes[e.dst])
        })
        .collect()
}

/// Every character on `base` with value sets `{0, …, k-1}`, `k ≤ max_size`.
/// With `units`, unit loops act as identities. Value sizes vary first
/// (outermost), then action tables in edge order.
pub fn characters(base: &Arc<FiniteGraph>, max_size: usize, units: Option<UnitChoice>) -> impl Iterator<Item = Character> {
    let base = base.clone();
    let n = base.vertex_count();
    MixedRadix::new(vec![max_size + 1; n]).flat_map(move |sizes| {
        let radices = action_radices(&base, &sizes, units.as_ref());
        let base = base.clone();
        let units = units.clone();
        let mut digits = if radices.contains(&0) {
            None
        } else {
            Some(vec![0; radices.len()])
        };
        std::iter::from_fn(move || {
            let current = digits.take()?;
            let mut next = current.clone();
            if advance(&mut next, &radices) {
                digits = Some(next);
            }
            let mut actions = vec![Vec::new(); n * n];
            let mut offset = 0;
            for e in base.edges() {
                let len = sizes[e.dst];
                let table: Vec<usize> = if units.as_ref().is_some_and(|u| u.is_unit(e)) {
                    (0..len).collect()
                } else {
                    current[offset..offset + len].to_vec()
                };
                offset += len;
                actions[e.src * n + e.dst].push(table);
            }
            let values = sizes.iter().map(|&k| FiniteSet::range(k)).collect();
            Some(Character::new(base.clone(), values, actions).expect("enumerated actions are well typed"))
        })
    })
}

/// Every contact table on `graph`.
pub fn contact_tables(graph: &Arc<FiniteGraph>) -> impl Iterator<Item = ContactTable> {
    ContactTable::all(graph)
}

/// `n^(n·n)`, the number of unrestricted tables, as a sanity bound.
pub fn magma_count(n: usize) -> u128 {
    saturating_pow(n, n.saturating_sub(1) * n.saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn posets_on_three_points() {
        assert_eq!(labeled_posets(3).count(), 19);
        assert_eq!(labeled_posets(2).count(), 3);
        assert_eq!(labeled_posets(0).count(), 1);
    }

    #[test]
    fn one_vertex_graphs_with_at_most_one_loop() {
        assert_eq!(graphs(1, 1).count(), 2);
    }

    #[test]
    fn first_non_associative_magma() {
        let t = unital_magmas(3).find(|t| !is_associative_table(t)).unwrap();
        assert_eq!(t, vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]]);
        assert_eq!(unital_magmas(3).count() as u128, magma_count(3));
    }

    #[test]
    fn character_count_matches() {
        let g = FiniteGraph::arrow().shared();
        assert_eq!(characters(&g, 2, None).count() as u128, count_characters(&g, 2, None));
        let x = crate::structure::walking_arrow();
        let u = x.units().clone();
        let n = characters(x.graph(), 2, Some(u.clone())).count() as u128;
        assert_eq!(n, count_characters(x.graph(), 2, Some(&u)));
        assert!(characters(x.graph(), 2, Some(u.clone())).all(|c| c.unital_check(&u).holds()));
    }
}
