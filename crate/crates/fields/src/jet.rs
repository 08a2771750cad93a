//! Third-order jets: value plus first three derivatives, with the arithmetic
//! needed to differentiate the smooth transition function analytically.

/// f, f', f'', f''' at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3(pub [f64; 4]);

impl Jet3 {
    pub fn constant(c: f64) -> Self {
        Jet3([c, 0.0, 0.0, 0.0])
    }

    pub fn variable(x: f64) -> Self {
        Jet3([x, 1.0, 0.0, 0.0])
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    pub fn add(&self, o: &Jet3) -> Jet3 {
        Jet3([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }

    pub fn mul(&self, o: &Jet3) -> Jet3 {
        let (f, g) = (&self.0, &o.0);
        Jet3([
            f[0] * g[0],
            f[1] * g[0] + f[0] * g[1],
            f[2] * g[0] + 2.0 * f[1] * g[1] + f[0] * g[2],
            f[3] * g[0] + 3.0 * f[2] * g[1] + 3.0 * f[1] * g[2] + f[0] * g[3],
        ])
    }

    /// Quotient rule, solving (q·g)⁽ᵏ⁾ = f⁽ᵏ⁾ for q's derivatives in turn.
    pub fn div(&self, o: &Jet3) -> Jet3 {
        let (f, g) = (&self.0, &o.0);
        let q0 = f[0] / g[0];
        let q1 = (f[1] - q0 * g[1]) / g[0];
        let q2 = (f[2] - 2.0 * q1 * g[1] - q0 * g[2]) / g[0];
        let q3 = (f[3] - 3.0 * q2 * g[1] - 3.0 * q1 * g[2] - q0 * g[3]) / g[0];
        Jet3([q0, q1, q2, q3])
    }

    /// exp(f) by Faà di Bruno.
    pub fn exp(&self) -> Jet3 {
        let f = &self.0;
        let e = f[0].exp();
        Jet3([
            e,
            e * f[1],
            e * (f[2] + f[1] * f[1]),
            e * (f[3] + 3.0 * f[1] * f[2] + f[1] * f[1] * f[1]),
        ])
    }

    /// Pull back through an affine substitution x ↦ f(c + s·x): each
    /// derivative order picks up one power of the slope s.
    pub fn scale_arg(&self, s: f64) -> Jet3 {
        let f = &self.0;
        Jet3([f[0], f[1] * s, f[2] * s * s, f[3] * s * s * s])
    }
}

/// Jet of the smooth transition ϑ at y:
/// ϑ(y) = e^{−1/y}χ_{y>0} / (e^{−1/y}χ_{y>0} + e^{−1/(1−y)}χ_{y<1}).
pub fn transition_jet(y: f64) -> Jet3 {
    if y <= 0.0 {
        Jet3::constant(0.0)
    } else if y >= 1.0 {
        Jet3::constant(1.0)
    } else {
        let v = Jet3::variable(y);
        let one = Jet3::constant(1.0);
        let rise = Jet3::constant(-1.0).div(&v).exp();
        let fall = Jet3::constant(-1.0)
            .div(&one.add(&v.mul(&Jet3::constant(-1.0))))
            .exp();
        rise.div(&rise.add(&fall))
    }
}
