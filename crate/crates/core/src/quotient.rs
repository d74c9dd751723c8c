//! Homomorphisms from a knot group into a finite group.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::group::FiniteGroup;
use crate::wirtinger::{GroupPresentation, Word};

/// A homomorphism from the knot group into `group`, with the images of the
/// peripheral elements. Only the image subgroup enters the algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuotient {
    pub group: Arc<FiniteGroup>,
    pub gen_images: Vec<usize>,
    pub m_img: usize,
    pub minv_img: usize,
    pub l_img: usize,
    pub image_subgroup: Vec<usize>,
}

impl FiniteQuotient {
    pub fn new(group: Arc<FiniteGroup>, p: &GroupPresentation, gen_images: Vec<usize>) -> Self {
        let m_img = p.meridian.evaluate(&group, &gen_images);
        let l_img = p.longitude.evaluate(&group, &gen_images);
        let image_subgroup = group.generated_subgroup(&gen_images);
        Self {
            minv_img: group.inv(m_img),
            group,
            gen_images,
            m_img,
            l_img,
            image_subgroup,
        }
    }

    /// Quotient onto the subgroup generated by a meridian image alone, with a
    /// given longitude image (the unknot pattern when `l` is the identity).
    pub fn cyclic_image(group: Arc<FiniteGroup>, m: usize, l: usize) -> Self {
        let image_subgroup = group.generated_subgroup(&[m, l]);
        Self {
            minv_img: group.inv(m),
            gen_images: vec![m],
            m_img: m,
            l_img: l,
            image_subgroup,
            group,
        }
    }

    pub fn e_img(&self) -> usize {
        self.group.identity()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_subgroup.len() == self.group.order()
    }

    /// Powers of the longitude image: the finite image of `L`.
    pub fn peripheral_images(&self) -> Vec<usize> {
        self.group.generated_subgroup(&[self.l_img])
    }

    /// Whether every defining property holds for presentation `p`.
    pub fn check(&self, p: &GroupPresentation) -> Result<(), String> {
        let g = &self.group;
        if let Some(r) = p
            .relators
            .iter()
            .find(|r| r.evaluate(g, &self.gen_images) != g.identity())
        {
            return Err(format!("relator {r} does not vanish"));
        }
        if g.mul(self.m_img, self.minv_img) != g.identity() {
            return Err("m * m^-1 is not the identity".into());
        }
        if !g.commute(self.l_img, self.m_img) {
            return Err("longitude does not commute with meridian".into());
        }
        let members: HashSet<usize> = self.image_subgroup.iter().copied().collect();
        for &x in &self.image_subgroup {
            for &y in &self.image_subgroup {
                if !members.contains(&g.mul(x, y)) {
                    return Err("image is not closed".into());
                }
            }
        }
        if !members.contains(&self.m_img) {
            return Err("meridian image outside the image subgroup".into());
        }
        Ok(())
    }
}

/// Generator order that lets relators be tested as early as possible.
fn search_order(p: &GroupPresentation) -> Vec<usize> {
    let n = p.n_generators;
    let gens_of: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| {
            let mut g: Vec<usize> = r.letters().iter().map(|l| l.generator).collect();
            g.sort_unstable();
            g.dedup();
            g
        })
        .collect();
    let mut order = vec![0];
    let mut placed = vec![false; n];
    placed[0] = true;
    while order.len() < n {
        // prefer the generator that completes the most relators, then the
        // one touching the most partially-placed relators
        let best = (0..n)
            .filter(|&g| !placed[g])
            .max_by_key(|&g| {
                let mut complete = 0;
                let mut touching = 0;
                for gens in &gens_of {
                    if gens.contains(&g) {
                        let missing = gens.iter().filter(|&&h| !placed[h]).count();
                        if missing == 1 {
                            complete += 1;
                        }
                        touching += 1;
                    }
                }
                (complete, touching, std::cmp::Reverse(g))
            })
            .unwrap();
        placed[best] = true;
        order.push(best);
    }
    order
}

/// All homomorphisms sending every generator into one conjugacy class
/// (`meridian_class`, or each class in turn when `None`), in lexicographic
/// order of `gen_images` within each class.
pub fn enumerate_homs(
    p: &GroupPresentation,
    group: &Arc<FiniteGroup>,
    meridian_class: Option<usize>,
) -> Vec<FiniteQuotient> {
    let classes: Vec<usize> = match meridian_class {
        Some(c) => vec![c],
        None => (0..group.classes().len()).collect(),
    };
    let order = search_order(p);
    let position: Vec<usize> = {
        let mut pos = vec![0; p.n_generators];
        for (i, &g) in order.iter().enumerate() {
            pos[g] = i;
        }
        pos
    };
    // relators checkable once the generator at depth k is placed
    let mut check_at: Vec<Vec<&Word>> = vec![Vec::new(); p.n_generators];
    for r in &p.relators {
        let depth = r
            .letters()
            .iter()
            .map(|l| position[l.generator])
            .max()
            .unwrap_or(0);
        check_at[depth].push(r);
    }

    let mut out = Vec::new();
    for class in classes {
        let Some(members) = group.classes().get(class) else {
            continue;
        };
        let mut found: Vec<Vec<usize>> = members
            .par_iter()
            .flat_map_iter(|&first| {
                let mut images = vec![usize::MAX; p.n_generators];
                images[order[0]] = first;
                let mut results = Vec::new();
                search(
                    group,
                    members,
                    &order,
                    &check_at,
                    1,
                    &mut images,
                    &mut results,
                );
                results
            })
            .collect();
        found.sort();
        out.extend(
            found
                .into_iter()
                .map(|images| FiniteQuotient::new(group.clone(), p, images)),
        );
    }
    out
}

fn search(
    group: &FiniteGroup,
    members: &[usize],
    order: &[usize],
    check_at: &[Vec<&Word>],
    depth: usize,
    images: &mut Vec<usize>,
    results: &mut Vec<Vec<usize>>,
) {
    let ok = |images: &[usize], d: usize| {
        check_at[d]
            .iter()
            .all(|r| r.evaluate(group, images) == group.identity())
    };
    if depth == 1 && !ok(images, 0) {
        return;
    }
    if depth == order.len() {
        results.push(images.clone());
        return;
    }
    let g = order[depth];
    for &x in members {
        images[g] = x;
        if ok(images, depth) {
            search(group, members, order, check_at, depth + 1, images, results);
        }
    }
    images[g] = usize::MAX;
}

/// One representative (the first in input order) per orbit under
/// simultaneous conjugation of all generator images.
pub fn dedupe_up_to_conjugacy(homs: &[FiniteQuotient]) -> Vec<FiniteQuotient> {
    let mut seen: HashSet<(String, Vec<usize>)> = HashSet::new();
    let mut out = Vec::new();
    for h in homs {
        let g = &h.group;
        let canonical = (0..g.order())
            .map(|c| {
                h.gen_images
                    .iter()
                    .map(|&x| g.conj(c, x))
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap_or_default();
        if seen.insert((g.name().to_string(), canonical)) {
            out.push(h.clone());
        }
    }
    out
}

/// Size of the conjugation orbit of `h`.
pub fn orbit_size(h: &FiniteQuotient) -> usize {
    let g = &h.group;
    let orbit: HashSet<Vec<usize>> = (0..g.order())
        .map(|c| h.gen_images.iter().map(|&x| g.conj(c, x)).collect())
        .collect();
    orbit.len()
}
