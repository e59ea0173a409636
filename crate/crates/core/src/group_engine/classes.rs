use super::group::FinGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Least element index in the class.
    pub representative: usize,
    /// Sorted element indices.
    pub members: Vec<usize>,
    pub element_order: usize,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Conjugacy classes in canonical order, with class-of-element and power maps.
///
/// Ordering key: (element order, class size, power-map profile, least member),
/// where the profile lists `(order, size)` of the class of `rep^m` for
/// `m = 0..exponent`. The identity class is always first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<usize>,
    group_order: usize,
    exponent: usize,
    /// `power_map[c][m]` is the class of `rep(c)^m`, `0 <= m < exponent`.
    power_map: Vec<Vec<usize>>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(ConjugacyClass::size).collect()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.element_order).collect()
    }

    /// Class of `rep(class)^m`; negative `m` allowed.
    pub fn power(&self, class: usize, m: i64) -> usize {
        self.power_map[class][m.rem_euclid(self.exponent as i64) as usize]
    }

    /// Class containing the inverses of `class`.
    pub fn inverse_class(&self, class: usize) -> usize {
        self.power(class, -1)
    }
}

pub fn conjugacy_classes(g: &FinGroup) -> ClassData {
    let n = g.order();
    let mut raw_class = vec![usize::MAX; n];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for x in g.elements() {
        if raw_class[x] != usize::MAX {
            continue;
        }
        let id = raw.len();
        let mut members = Vec::new();
        for h in g.elements() {
            let y = g.conjugate(x, h);
            if raw_class[y] == usize::MAX {
                raw_class[y] = id;
                members.push(y);
            }
        }
        members.sort_unstable();
        raw.push(members);
    }

    let exponent = g.exponent();
    let orders: Vec<usize> = raw.iter().map(|m| g.element_order(m[0])).collect();
    let raw_powers: Vec<Vec<usize>> = raw
        .iter()
        .map(|m| {
            let rep = m[0];
            let mut acc = g.identity();
            (0..exponent)
                .map(|_| {
                    let c = raw_class[acc];
                    acc = g.mul(acc, rep);
                    c
                })
                .collect()
        })
        .collect();

    let key = |c: usize| {
        let profile: Vec<(usize, usize)> = raw_powers[c].iter().map(|&d| (orders[d], raw[d].len())).collect();
        (orders[c], raw[c].len(), profile, raw[c][0])
    };
    let mut perm: Vec<usize> = (0..raw.len()).collect();
    perm.sort_by_key(|&c| key(c));
    let mut new_id = vec![0; raw.len()];
    for (new, &old) in perm.iter().enumerate() {
        new_id[old] = new;
    }

    let classes = perm
        .iter()
        .map(|&old| ConjugacyClass {
            representative: raw[old][0],
            members: raw[old].clone(),
            element_order: orders[old],
        })
        .collect();
    let class_of = raw_class.iter().map(|&c| new_id[c]).collect();
    let power_map = perm.iter().map(|&old| raw_powers[old].iter().map(|&d| new_id[d]).collect()).collect();
    ClassData { classes, class_of, group_order: n, exponent, power_map }
}
