use super::{FiniteGroup, PermutationGroup};

/// Canonical names of the default fingerprint panel, in panel order.
pub const DEFAULT_PANEL: [&str; 11] = ["Z2", "Z3", "Z4", "Z2xZ2", "S3", "Z5", "Z6", "D4", "Q8", "A4", "S4"];

/// A target group together with its canonical panel name.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: FiniteGroup,
}

fn perm_group(degree: usize, gens: &[&[usize]]) -> FiniteGroup {
    let gens: Vec<Vec<usize>> = gens.iter().map(|g| g.to_vec()).collect();
    PermutationGroup::generate(degree, &gens, 64).expect("panel group").group().clone()
}

/// Looks up a panel group by canonical name (`Zn` for any n ≥ 1, plus
/// `Z2xZ2`, `S3`, `D4`, `Q8`, `A4`, `S4`).
pub fn panel_group(name: &str) -> Option<FiniteGroup> {
    let g = match name {
        "Z2xZ2" => FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        "S3" => perm_group(3, &[&[1, 2, 0], &[1, 0, 2]]),
        "D4" => perm_group(4, &[&[1, 2, 3, 0], &[3, 2, 1, 0]]),
        // Regular representation of the quaternions.
        "Q8" => perm_group(8, &[&[1, 2, 3, 0, 5, 6, 7, 4], &[4, 7, 6, 5, 2, 1, 0, 3]]),
        "A4" => perm_group(4, &[&[1, 2, 0, 3], &[1, 0, 3, 2]]),
        "S4" => perm_group(4, &[&[1, 2, 3, 0], &[1, 0, 2, 3]]),
        _ => {
            let n: usize = name.strip_prefix('Z')?.parse().ok()?;
            if n == 0 {
                return None;
            }
            FiniteGroup::cyclic(n)
        }
    };
    Some(g)
}

pub fn default_panel() -> Vec<NamedGroup> {
    panel_from_names(DEFAULT_PANEL.iter().copied()).expect("default panel names are valid")
}

/// Builds a panel from names; `Err(name)` for the first unknown name.
pub fn panel_from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Result<Vec<NamedGroup>, String> {
    names
        .into_iter()
        .map(|n| {
            panel_group(n)
                .map(|group| NamedGroup { name: n.to_string(), group })
                .ok_or_else(|| n.to_string())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_histogram(g: &FiniteGroup) -> Vec<usize> {
        let mut h = vec![0; g.order() + 1];
        for x in 0..g.order() {
            h[g.element_order(x)] += 1;
        }
        h
    }

    #[test]
    fn panel_orders() {
        let orders: Vec<usize> = default_panel().iter().map(|g| g.group.order()).collect();
        assert_eq!(orders, vec![2, 3, 4, 4, 6, 5, 6, 8, 8, 12, 24]);
    }

    #[test]
    fn quaternions_have_a_single_involution() {
        let q8 = panel_group("Q8").unwrap();
        let h = order_histogram(&q8);
        assert_eq!((h[1], h[2], h[4]), (1, 1, 6));
        let d4 = panel_group("D4").unwrap();
        let h = order_histogram(&d4);
        assert_eq!((h[1], h[2], h[4]), (1, 5, 2));
    }

    #[test]
    fn a4_has_no_subgroup_of_order_six() {
        let a4 = panel_group("A4").unwrap();
        assert!(a4.all_subgroups().iter().all(|h| h.order() != 6));
    }

    #[test]
    fn unknown_names() {
        assert!(panel_group("Z0").is_none());
        assert!(panel_group("M11").is_none());
        assert_eq!(panel_from_names(["Z2", "nope"]).unwrap_err(), "nope");
    }
}
