use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{mixed_cones, CatalanError};
use crate::exact_polytopes::Fan;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A signed rooted forest on `1..=n`: each non-root has a parent and an edge sign.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedForest {
    // (parent, sign) at index i − 1; None for roots
    up: Vec<Option<(usize, Sign)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedForestJson {
    #[serde(default)]
    pub n: Option<usize>,
    pub parents: BTreeMap<usize, usize>,
    pub signs: BTreeMap<usize, Sign>,
}

impl SignedForest {
    /// `edges[i]` is `(child, parent, sign)`.
    pub fn new(n: usize, edges: &[(usize, usize, Sign)]) -> Result<Self, CatalanError> {
        let bad = |s: String| CatalanError::Forest(s);
        let mut up = vec![None; n];
        for &(c, p, s) in edges {
            if c == 0 || c > n || p == 0 || p > n || c == p {
                return Err(bad(format!("edge ({c},{p}) out of range")));
            }
            if up[c - 1].replace((p, s)).is_some() {
                return Err(bad(format!("vertex {c} has two parents")));
            }
        }
        let f = SignedForest { up };
        if !f.is_acyclic() {
            return Err(bad("parent map has a cycle".into()));
        }
        Ok(f)
    }

    pub fn isolated(n: usize) -> Self {
        SignedForest { up: vec![None; n] }
    }

    fn is_acyclic(&self) -> bool {
        let n = self.n();
        (1..=n).all(|mut v| {
            for _ in 0..=n {
                match self.up[v - 1] {
                    None => return true,
                    Some((p, _)) => v = p,
                }
            }
            false
        })
    }

    pub fn n(&self) -> usize {
        self.up.len()
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.up[i - 1].map(|x| x.0)
    }

    pub fn sign(&self, i: usize) -> Option<Sign> {
        self.up[i - 1].map(|x| x.1)
    }

    pub fn roots(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.up[i - 1].is_none()).collect()
    }

    pub fn children(&self, i: usize) -> Vec<usize> {
        (1..=self.n()).filter(|&c| self.parent(c) == Some(i)).collect()
    }

    /// `r_i`: flip every edge from `i` to a child.
    pub fn r(&self, i: usize) -> Self {
        let mut up = self.up.clone();
        for (p, s) in up.iter_mut().flatten() {
            if *p == i {
                *s = s.flip();
            }
        }
        SignedForest { up }
    }

    /// Parents before children.
    fn topological_order(&self) -> Vec<usize> {
        let mut order = self.roots();
        let mut k = 0;
        while k < order.len() {
            let v = order[k];
            order.extend(self.children(v));
            k += 1;
        }
        order
    }

    /// Invariant under `r_i` moves and relabelling: at each vertex the sorted child entries,
    /// with or without all their signs flipped, whichever is smaller.
    pub fn canonical_form(&self) -> String {
        fn tree(f: &SignedForest, v: usize) -> String {
            let kids: Vec<(Sign, String)> =
                f.children(v).into_iter().map(|c| (f.sign(c).expect("child"), tree(f, c))).collect();
            let render = |flip: bool| {
                let mut parts: Vec<String> = kids
                    .iter()
                    .map(|(s, t)| {
                        let s = if flip { s.flip() } else { *s };
                        format!("{}{}", s.symbol(), t)
                    })
                    .collect();
                parts.sort();
                parts.concat()
            };
            let best = render(false).min(render(true));
            format!("({best})")
        }
        let mut roots: Vec<String> = self.roots().into_iter().map(|r| tree(self, r)).collect();
        roots.sort();
        roots.concat()
    }

    pub fn to_json(&self) -> SignedForestJson {
        let mut parents = BTreeMap::new();
        let mut signs = BTreeMap::new();
        for (i, e) in self.up.iter().enumerate() {
            if let Some((p, s)) = e {
                parents.insert(i + 1, *p);
                signs.insert(i + 1, *s);
            }
        }
        SignedForestJson { n: Some(self.n()), parents, signs }
    }

    pub fn from_json(j: &SignedForestJson) -> Result<Self, CatalanError> {
        let mentioned = j.parents.iter().flat_map(|(&c, &p)| [c, p]).max().unwrap_or(0);
        let n = j.n.unwrap_or(mentioned);
        let mut edges = Vec::new();
        for (&c, &p) in &j.parents {
            let s = *j
                .signs
                .get(&c)
                .ok_or_else(|| CatalanError::Forest(format!("no sign for edge above {c}")))?;
            edges.push((c, p, s));
        }
        if j.signs.keys().any(|c| !j.parents.contains_key(c)) {
            return Err(CatalanError::Forest("sign on a root".into()));
        }
        Self::new(n, &edges)
    }
}

impl Serialize for SignedForest {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedForest {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = SignedForestJson::deserialize(d)?;
        Self::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// Every signed rooted forest on `1..=n`.
pub fn signed_forests(n: usize) -> Vec<SignedForest> {
    let mut out = Vec::new();
    let mut parent = vec![0usize; n];
    loop {
        let up: Vec<Option<(usize, Sign)>> =
            parent.iter().map(|&p| (p > 0).then_some((p, Sign::Plus))).collect();
        let f = SignedForest { up };
        if parent.iter().enumerate().all(|(i, &p)| p != i + 1) && f.is_acyclic() {
            let non_roots: Vec<usize> = (0..n).filter(|&i| parent[i] > 0).collect();
            for mask in 0..1usize << non_roots.len() {
                let mut g = f.clone();
                for (b, &i) in non_roots.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        g.up[i] = Some((parent[i], Sign::Minus));
                    }
                }
                out.push(g);
            }
        }
        // odometer over parent ∈ {0, …, n}^n
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            parent[k] += 1;
            if parent[k] <= n {
                break;
            }
            parent[k] = 0;
            k += 1;
        }
    }
}

/// Classes of `SF_n/∼` keyed by canonical form, each with its first member and orbit size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SfClass {
    pub canonical: String,
    pub representative: SignedForest,
    pub members: usize,
}

pub fn sf_classes(n: usize) -> Vec<SfClass> {
    let mut classes: BTreeMap<String, SfClass> = BTreeMap::new();
    for f in signed_forests(n) {
        let key = f.canonical_form();
        classes
            .entry(key.clone())
            .and_modify(|c| c.members += 1)
            .or_insert(SfClass { canonical: key, representative: f, members: 1 });
    }
    classes.into_values().collect()
}

/// Rays `v_i = e_i` (indices `0..n`) and `w_i = −e_i + v_j` or `−e_i + w_j` for a `+` or `−`
/// edge to the parent `j`; `w_i = −e_i` at roots.
pub fn fano_bott_from_forest(f: &SignedForest) -> Result<Fan, CatalanError> {
    let n = f.n();
    let e = |i: usize| -> Vec<i64> { (0..n).map(|k| i64::from(k + 1 == i)).collect() };
    let mut w: Vec<Vec<i64>> = vec![Vec::new(); n + 1];
    for i in f.topological_order() {
        let mut wi: Vec<i64> = e(i).iter().map(|x| -x).collect();
        if let Some((j, s)) = f.up[i - 1] {
            let add = match s {
                Sign::Plus => e(j),
                Sign::Minus => w[j].clone(),
            };
            for (a, b) in wi.iter_mut().zip(add) {
                *a += b;
            }
        }
        w[i] = wi;
    }
    let mut rays: Vec<Vec<i64>> = (1..=n).map(e).collect();
    rays.extend(w.into_iter().skip(1));
    Ok(Fan::new(n, rays, mixed_cones(n))?)
}

/// Reads the forest off a Fano Bott fan: each primitive collection `{v_i, w_i}` (lower ray index
/// taken as `v_i`) either sums to zero, or to a ray of another collection.
pub fn forest_from_fano_fan(fan: &Fan) -> Result<SignedForest, CatalanError> {
    let bad = |s: &str| CatalanError::NotBott(s.to_string());
    let n = fan.rank();
    if fan.rays().len() != 2 * n || !fan.is_complete() || !fan.is_smooth() {
        return Err(bad("need 2n rays in a smooth complete fan"));
    }
    let pcs = fan.primitive_collections()?;
    if pcs.len() != n || pcs.iter().any(|c| c.len() != 2) {
        return Err(bad("primitive collections are not n pairs"));
    }
    let covered: BTreeSet<usize> = pcs.iter().flatten().copied().collect();
    if covered.len() != 2 * n {
        return Err(bad("primitive collections overlap"));
    }
    let mut owner = vec![(0usize, false); 2 * n];
    for (i, c) in pcs.iter().enumerate() {
        owner[c[0]] = (i + 1, true);
        owner[c[1]] = (i + 1, false);
    }
    let mut edges = Vec::new();
    for (i, c) in pcs.iter().enumerate() {
        let sum: Vec<i64> = fan.rays()[c[0]].iter().zip(&fan.rays()[c[1]]).map(|(a, b)| a + b).collect();
        if sum.iter().all(|&x| x == 0) {
            continue;
        }
        let hit = fan
            .rays()
            .iter()
            .position(|r| *r == sum)
            .ok_or_else(|| bad("v_i + w_i is neither zero nor a ray, so the fan is not Fano"))?;
        let (j, is_v) = owner[hit];
        if j == i + 1 {
            return Err(bad("v_i + w_i is one of v_i, w_i"));
        }
        edges.push((i + 1, j, if is_v { Sign::Plus } else { Sign::Minus }));
    }
    SignedForest::new(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_polytopes::fan_isomorphic;

    #[test]
    fn forest_counts() {
        // (n+1)^(n−1) rooted forests, with 2^edges signings
        assert_eq!(signed_forests(1).len(), 1);
        assert_eq!(signed_forests(2).len(), 1 + 2 * 2);
        let unsigned3 = signed_forests(3).iter().filter(|f| (1..=3).all(|i| f.sign(i) != Some(Sign::Minus))).count();
        assert_eq!(unsigned3, 16);
    }

    #[test]
    fn isolated_roots_give_product_of_lines() {
        let f = fano_bott_from_forest(&SignedForest::isolated(3)).unwrap();
        assert!(f.is_complete() && f.is_fano().unwrap());
        let rays: Vec<Vec<i64>> = (0..3)
            .flat_map(|i| {
                let e: Vec<i64> = (0..3).map(|k| i64::from(k == i)).collect();
                [e.clone(), e.iter().map(|x| -x).collect()]
            })
            .collect();
        let cones = (0..8).map(|m: usize| (0..3).map(|k| 2 * k + (m >> k & 1)).collect()).collect();
        let p1cubed = Fan::new(3, rays, cones).unwrap();
        assert!(fan_isomorphic(&f, &p1cubed).unwrap());
    }

    #[test]
    fn round_trip() {
        for f in signed_forests(3) {
            let fan = fano_bott_from_forest(&f).unwrap();
            assert!(fan.is_complete() && fan.is_smooth() && fan.is_fano().unwrap(), "{f:?}");
            let g = forest_from_fano_fan(&fan).unwrap();
            assert_eq!(g.canonical_form(), f.canonical_form());
            assert!(fan_isomorphic(&fano_bott_from_forest(&g).unwrap(), &fan).unwrap());
        }
    }

    #[test]
    fn r_moves_preserve_class() {
        for f in signed_forests(3) {
            for i in 1..=3 {
                assert_eq!(f.r(i).canonical_form(), f.canonical_form());
            }
        }
    }

    #[test]
    fn class_counts() {
        assert_eq!(sf_classes(1).len(), 1);
        assert_eq!(sf_classes(2).len(), 2);
        assert_eq!(sf_classes(4).len(), 13);
    }

    #[test]
    fn json_round_trip() {
        let f = SignedForest::new(3, &[(2, 1, Sign::Plus), (3, 2, Sign::Minus)]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("\"-\""));
        assert_eq!(serde_json::from_str::<SignedForest>(&s).unwrap(), f);
        assert!(SignedForest::new(2, &[(1, 2, Sign::Plus), (2, 1, Sign::Plus)]).is_err());
    }
}
