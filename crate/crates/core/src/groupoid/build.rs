use super::Groupoid;
use crate::algebra::FiniteGroup;

impl Groupoid {
    /// Connected groupoid on `objects` with every isotropy group equal to `isotropy`:
    /// morphisms are triples `(y, h, x)` composing as `(z, h', y)(y, h, x) = (z, h'h, x)`.
    pub fn connected(objects: &[&str], isotropy: &FiniteGroup) -> Self {
        let n = objects.len();
        let k = isotropy.order();
        let index = |y: usize, h: usize, x: usize| (y * k + h) * n + x;
        let mut morphisms = Vec::with_capacity(n * n * k);
        for y in 0..n {
            for h in 0..k {
                for x in 0..n {
                    let name = match (x == y, h == isotropy.identity(), isotropy.is_trivial()) {
                        (true, true, _) => format!("1{}", objects[x]),
                        (_, _, true) => format!("{}>{}", objects[x], objects[y]),
                        _ => format!("{}>{}:{}", objects[x], objects[y], isotropy.name(h)),
                    };
                    morphisms.push((name, x, y));
                }
            }
        }
        let split = |m: usize| (m / n / k, (m / n) % k, m % n);
        Groupoid::from_parts(
            objects.iter().map(|s| s.to_string()).collect(),
            morphisms,
            |l, r| {
                let ((z, h2, y2), (y, h, x)) = (split(l), split(r));
                (y2 == y).then(|| index(z, isotropy.mul(h2, h), x))
            },
            (0..n).map(|x| index(x, isotropy.identity(), x)).collect(),
            (0..n * n * k)
                .map(|m| {
                    let (y, h, x) = split(m);
                    index(x, isotropy.inv(h), y)
                })
                .collect(),
        )
    }

    /// The pair groupoid: exactly one morphism between any two objects.
    pub fn pair(objects: &[&str]) -> Self {
        Self::connected(objects, &FiniteGroup::trivial())
    }

    /// Only identity morphisms.
    pub fn discrete(objects: &[&str]) -> Self {
        let n = objects.len();
        Groupoid::from_parts(
            objects.iter().map(|s| s.to_string()).collect(),
            objects.iter().enumerate().map(|(i, x)| (format!("1{x}"), i, i)).collect(),
            |l, r| (l == r).then_some(l),
            (0..n).collect(),
            (0..n).collect(),
        )
    }

    /// A group as a one-object groupoid; morphisms carry the element names.
    pub fn from_group(group: &FiniteGroup, object: &str) -> Self {
        Groupoid::from_parts(
            vec![object.to_string()],
            group.names().iter().map(|n| (n.clone(), 0, 0)).collect(),
            |l, r| Some(group.mul(l, r)),
            vec![group.identity()],
            group.elements().map(|g| group.inv(g)).collect(),
        )
    }

    /// Action groupoid of a global action `act(g, x)` of a finite group on `objects`.
    pub fn of_global_action(group: &FiniteGroup, objects: &[String], act: impl Fn(usize, usize) -> usize) -> Self {
        let n = objects.len();
        let morphisms = (0..group.order())
            .flat_map(|g| (0..n).map(move |x| (g, x)))
            .map(|(g, x)| {
                let y = act(g, x);
                (format!("({},{},{})", objects[y], group.name(g), objects[x]), x, y)
            })
            .collect();
        Groupoid::from_parts(
            objects.to_vec(),
            morphisms,
            |l, r| {
                let ((h, y), (g, x)) = ((l / n, l % n), (r / n, r % n));
                (act(g, x) == y).then(|| group.mul(h, g) * n + x)
            },
            (0..n).map(|x| group.identity() * n + x).collect(),
            (0..group.order() * n).map(|m| group.inv(m / n) * n + act(m / n, m % n)).collect(),
        )
    }

    /// Disjoint union; identifiers of the parts must not collide.
    pub fn disjoint_union(parts: &[Groupoid]) -> Self {
        let mut objects = Vec::new();
        let mut morphisms = Vec::new();
        let mut owner = Vec::new();
        let mut ident = Vec::new();
        let mut inv = Vec::new();
        let (mut obj_off, mut mor_off) = (0, 0);
        let mut offsets = Vec::new();
        for (p, g) in parts.iter().enumerate() {
            objects.extend(g.objects.iter().cloned());
            for k in 0..g.morphism_count() {
                morphisms.push((g.morphisms[k].clone(), g.src[k] + obj_off, g.tgt[k] + obj_off));
                owner.push((p, k));
                inv.push(g.inv[k] + mor_off);
            }
            ident.extend(g.ident.iter().map(|&k| k + mor_off));
            offsets.push(mor_off);
            obj_off += g.object_count();
            mor_off += g.morphism_count();
        }
        Groupoid::from_parts(
            objects,
            morphisms,
            |l, r| {
                let ((pl, kl), (pr, kr)) = (owner[l], owner[r]);
                if pl != pr {
                    return None;
                }
                parts[pl].compose(kl, kr).map(|c| c + offsets[pl])
            },
            ident,
            inv,
        )
    }

    /// Renames objects and morphisms through the given functions.
    pub fn renamed(&self, object: impl Fn(&str) -> String, morphism: impl Fn(&str) -> String) -> Self {
        let mut g = self.clone();
        g.objects = self.objects.iter().map(|s| object(s)).collect();
        g.morphisms = self.morphisms.iter().map(|s| morphism(s)).collect();
        g
    }

    /// Reorders objects and morphisms: new index `i` holds old index `perm[i]`.
    pub fn permuted(&self, object_perm: &[usize], morphism_perm: &[usize]) -> Self {
        let mut obj_pos = vec![0; object_perm.len()];
        for (i, &o) in object_perm.iter().enumerate() {
            obj_pos[o] = i;
        }
        let mut mor_pos = vec![0; morphism_perm.len()];
        for (i, &o) in morphism_perm.iter().enumerate() {
            mor_pos[o] = i;
        }
        Groupoid::from_parts(
            object_perm.iter().map(|&o| self.objects[o].clone()).collect(),
            morphism_perm
                .iter()
                .map(|&k| (self.morphisms[k].clone(), obj_pos[self.src[k]], obj_pos[self.tgt[k]]))
                .collect(),
            |l, r| self.compose(morphism_perm[l], morphism_perm[r]).map(|c| mor_pos[c]),
            object_perm.iter().map(|&o| mor_pos[self.ident[o]]).collect(),
            morphism_perm.iter().map(|&k| mor_pos[self.inv[k]]).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructions_validate() {
        let c4 = FiniteGroup::cyclic(4);
        for g in [
            Groupoid::connected(&["a", "b", "c"], &c4),
            Groupoid::discrete(&["a", "b"]),
            Groupoid::from_group(&c4, "*"),
            Groupoid::of_global_action(&c4, &["x".into(), "y".into()], |g, x| (x + g) % 2),
            Groupoid::disjoint_union(&[Groupoid::pair(&["a", "b"]), Groupoid::discrete(&["c"])]),
        ] {
            assert!(g.validate().is_empty(), "{:?}", g.validate());
        }
        let g = Groupoid::connected(&["a", "b"], &FiniteGroup::cyclic(2));
        assert_eq!(g.morphism_count(), 8);
        let perm = g.permuted(&[1, 0], &[7, 6, 5, 4, 3, 2, 1, 0]);
        assert!(perm.validate().is_empty());
    }
}
