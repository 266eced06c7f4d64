use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

use crate::{Error, Result};

/// One quadrature node in the standard fundamental domain; `weight`
/// includes the `dx dy` area element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub x: f64,
    pub y: f64,
    pub weight: f64,
}

/// Tensor Gauss-Legendre rule on `|x| <= 1/2`, `sqrt(1 - x^2) <= y <= y_max`,
/// in `x` and in `log y`.
#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    x_panels: usize,
    y_panels: usize,
    order: usize,
    y_max: f64,
    nodes: Vec<Node>,
}

impl QuadratureGrid {
    pub fn new(x_panels: usize, y_panels: usize, order: usize, y_max: f64) -> Result<Self> {
        if x_panels == 0 || y_panels == 0 || order == 0 {
            return Err(Error::Invalid("panel counts and order must be positive".into()));
        }
        if !(y_max >= 2.0) || !y_max.is_finite() {
            return Err(Error::Invalid(format!("y_max must be at least 2, got {y_max}")));
        }
        let rule = GaussLegendre::new(NonZeroUsize::new(order).unwrap());
        let pairs = rule.as_node_weight_pairs();
        let mut nodes = Vec::with_capacity(x_panels * y_panels * order * order);
        let hx = 1.0 / x_panels as f64;
        for px in 0..x_panels {
            let x0 = -0.5 + px as f64 * hx;
            for &(tx, wx) in pairs {
                let x = x0 + 0.5 * hx * (tx + 1.0);
                let wx = 0.5 * hx * wx;
                let lo = (1.0 - x * x).sqrt().ln();
                let hu = (y_max.ln() - lo) / y_panels as f64;
                for py in 0..y_panels {
                    let u0 = lo + py as f64 * hu;
                    for &(tu, wu) in pairs {
                        let y = (u0 + 0.5 * hu * (tu + 1.0)).exp();
                        nodes.push(Node { x, y, weight: wx * 0.5 * hu * wu * y });
                    }
                }
            }
        }
        Ok(QuadratureGrid { x_panels, y_panels, order, y_max, nodes })
    }

    /// Four panels in `x`, eight in `log y`, order 8, and `y_max = max(8, 6l)`
    /// so that forms decaying like `e^{-2 pi y / l}` at width-`l` cusps are
    /// negligible above the cut.
    pub fn for_level(l: u64) -> Self {
        Self::new(4, 8, 8, (6.0 * l as f64).max(8.0)).expect("valid default grid")
    }

    /// The same rule with twice as many panels in each direction.
    pub fn refined(&self) -> Self {
        Self::new(2 * self.x_panels, 2 * self.y_panels, self.order, self.y_max).expect("valid grid")
    }

    /// Half the panels (or half the order once a direction has one panel),
    /// used for the error estimate.
    pub fn coarsened(&self) -> Self {
        if self.x_panels == 1 && self.y_panels == 1 {
            return Self::new(1, 1, (self.order / 2).max(1), self.y_max).expect("valid grid");
        }
        Self::new(
            self.x_panels.div_ceil(2),
            self.y_panels.div_ceil(2),
            self.order,
            self.y_max,
        )
        .expect("valid grid")
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn y_max(&self) -> f64 {
        self.y_max
    }

    pub fn x_panels(&self) -> usize {
        self.x_panels
    }

    pub fn y_panels(&self) -> usize {
        self.y_panels
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_lie_in_the_domain_with_positive_weights() {
        let g = QuadratureGrid::new(3, 5, 6, 10.0).unwrap();
        assert_eq!(g.len(), 3 * 5 * 36);
        for n in g.nodes() {
            assert!(n.x.abs() <= 0.5 && n.x * n.x + n.y * n.y >= 1.0 && n.y <= 10.0);
            assert!(n.weight > 0.0);
        }
    }

    #[test]
    fn area_of_the_truncated_domain() {
        // int_{-1/2}^{1/2} (Y - sqrt(1 - x^2)) dx
        let y = 12.0;
        let exact = y - (3f64.sqrt() / 4.0 + std::f64::consts::PI / 6.0);
        let g = QuadratureGrid::new(2, 4, 8, y).unwrap();
        let area: f64 = g.nodes().iter().map(|n| n.weight).sum();
        assert!((area - exact).abs() < 1e-12, "{area} {exact}");
        // hyperbolic area pi/3 minus the part above Y
        let hyp: f64 = g.nodes().iter().map(|n| n.weight / (n.y * n.y)).sum();
        assert!((hyp - (std::f64::consts::PI / 3.0 - 1.0 / y)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(QuadratureGrid::new(0, 1, 1, 8.0).is_err());
        assert!(QuadratureGrid::new(1, 1, 1, 1.5).is_err());
        assert!(QuadratureGrid::new(1, 1, 1, f64::NAN).is_err());
    }

    #[test]
    fn refine_and_coarsen() {
        let g = QuadratureGrid::for_level(11);
        assert_eq!(g.y_max(), 66.0);
        assert_eq!(g.refined().len(), 4 * g.len());
        assert_eq!(g.coarsened().x_panels(), 2);
        assert_eq!(QuadratureGrid::for_level(1).y_max(), 8.0);
    }
}
