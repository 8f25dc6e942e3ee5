use super::{groupoid_iso_check, Groupoid, GroupoidMorphism};
use crate::algebra::FiniteGroup;
use crate::error::{Error, Result};

/// A global action whose action groupoid is isomorphic to a given connected groupoid.
#[derive(Clone, Debug)]
pub struct GlobalRealization {
    /// `isotropy × C_n`.
    pub group: FiniteGroup,
    /// `action[g * n + x]` is the image of object `x` under `g`.
    pub action: Vec<usize>,
    /// Objects in the same order as the input groupoid.
    pub action_groupoid: Groupoid,
    /// From `action_groupoid` to the input; identity on objects.
    pub witness_iso: GroupoidMorphism,
}

impl GlobalRealization {
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.action_groupoid.object_count() + x]
    }
}

/// The isotropy group at `x` as a table over its morphisms, with the embedding.
pub fn isotropy(g: &Groupoid, x: usize) -> (FiniteGroup, Vec<usize>) {
    let loops: Vec<usize> = g.hom(x, x).collect();
    let pos = |m: usize| loops.iter().position(|&k| k == m).expect("composite of loops is a loop");
    let group = FiniteGroup::from_fn(
        loops.iter().map(|&m| g.morphism_name(m).to_string()).collect(),
        pos(g.ident(x)),
        |a, b| pos(g.compose(loops[a], loops[b]).expect("loops compose")),
    );
    (group, loops)
}

/// Realizes a connected groupoid as the action groupoid of `isotropy × C_n` acting on its objects.
pub fn realize_connected(g: &Groupoid, basepoint: usize) -> Result<GlobalRealization> {
    let n = g.object_count();
    let mut order: Vec<usize> = (0..n).filter(|&x| x != basepoint).collect();
    order.sort_by(|&a, &b| g.object_name(a).cmp(g.object_name(b)));
    order.insert(0, basepoint);
    let mut pos = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    let mut trivialization = Vec::with_capacity(n);
    for y in 0..n {
        let tau = if y == basepoint {
            Some(g.ident(y))
        } else {
            g.hom(basepoint, y).min_by(|&a, &b| g.morphism_name(a).cmp(g.morphism_name(b)))
        };
        trivialization
            .push(tau.ok_or_else(|| Error::NotConnected(g.object_name(basepoint).into(), g.object_name(y).into()))?);
    }
    let (iso_group, loops) = isotropy(g, basepoint);
    let shifts = FiniteGroup::cyclic(n);
    let group = FiniteGroup::direct_product(&[&iso_group, &shifts]);
    let action: Vec<usize> = (0..group.order())
        .flat_map(|e| (0..n).map(move |x| (e, x)))
        .map(|(e, x)| order[(pos[x] + e % n) % n])
        .collect();
    let action_groupoid = Groupoid::of_global_action(&group, g.object_names(), |e, x| action[e * n + x]);
    let f1 = (0..group.order() * n)
        .map(|m| {
            let (e, x) = (m / n, m % n);
            let y = action[e * n + x];
            let h = loops[e / n];
            let back = g.inv(trivialization[x]);
            g.compose(trivialization[y], g.compose(h, back).unwrap()).unwrap()
        })
        .collect();
    let witness_iso = GroupoidMorphism { f0: (0..n).collect(), f1 };
    if !groupoid_iso_check(&witness_iso, &action_groupoid, g) {
        return Err(Error::NotAnIsomorphism);
    }
    Ok(GlobalRealization { group, action, action_groupoid, witness_iso })
}
