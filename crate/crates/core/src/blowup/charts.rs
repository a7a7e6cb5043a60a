use super::{BlowupIdeal, HypersurfaceSingularity};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{Poly, Ring};

/// A chart presented with as few variables as linear substitutions allow.
#[derive(Clone, Debug)]
pub struct SimplifiedChart {
    pub ring: Ring,
    pub ideal: Ideal,
    /// Image of each chart variable (ambient then ratios) in `ring`.
    pub images: Vec<Poly>,
}

/// One affine chart `D(g_i)` of the blowup.
#[derive(Clone, Debug)]
pub struct BlowupChart {
    pub index: usize,
    /// Ambient variables followed by the ratio variables.
    pub ring: Ring,
    pub ambient: usize,
    /// `(k, name)`: the variable `name` stands for `g_k / g_index`.
    pub ratios: Vec<(usize, String)>,
    /// Strict transform, saturated by the exceptional generator.
    pub defining_ideal: Ideal,
    /// The generator `g_index`, pulled back.
    pub exceptional: Poly,
    pub empty: bool,
    pub simplified: SimplifiedChart,
}

impl BlowupChart {
    /// Pulls an ambient polynomial back to the simplified chart ring.
    pub fn pullback(&self, p: &Poly) -> Result<Poly> {
        let amb = Ring::new(self.ring.vars()[..self.ambient].iter().cloned())?;
        let q = p.to_ring(&amb)?;
        Ok(q.compose(&self.simplified.images[..self.ambient], &self.simplified.ring))
    }
}

fn ratio_names(ambient: &Ring, m: usize) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for k in 0..m {
        let mut ring = ambient.clone();
        if !names.is_empty() {
            ring = ring.extend(&names).expect("fresh names");
        }
        names.push(ring.fresh_name(&format!("r{}", k + 1)));
    }
    names
}

/// Charts `Spec A[I / g_i]` for each generator `g_i` of the blowup ideal.
/// Chart `i` is `(f, g_i r_k - g_k) : g_i^inf`, the dehomogenization of
/// the Rees kernel at `y_i = 1`.
pub fn rees_charts(i: &BlowupIdeal, x: &HypersurfaceSingularity) -> Result<Vec<BlowupChart>> {
    if i.ring() != x.ring() {
        return Err(Error::Contract("blowup ideal and hypersurface live in different rings".into()));
    }
    let ambient = x.ring();
    let gens = i.gens();
    let m = gens.len();
    if m == 0 {
        return Err(Error::Contract("blowup ideal has no generators".into()));
    }
    let names = ratio_names(ambient, m);
    let mut charts = Vec::with_capacity(m);
    for idx in 0..m {
        let ratios: Vec<(usize, String)> = (0..m).filter(|&k| k != idx).map(|k| (k, names[k].clone())).collect();
        let ring = ambient.extend(&ratios.iter().map(|(_, n)| n.as_str()).collect::<Vec<_>>())?;
        let gi = gens[idx].to_ring(&ring)?;
        let mut eqs = vec![x.f().to_ring(&ring)?];
        for (k, name) in &ratios {
            let r = ring.var(name)?;
            eqs.push(&(&gi * &r) - &gens[*k].to_ring(&ring)?);
        }
        let total = Ideal::new(&ring, eqs)?;
        let defining = total.saturate(&gi)?.interreduced();
        let empty = defining.is_unit();
        let simplified = simplify(&defining);
        charts.push(BlowupChart {
            index: idx,
            ring,
            ambient: ambient.nvars(),
            ratios,
            defining_ideal: defining,
            exceptional: gi,
            empty,
            simplified,
        });
    }
    Ok(charts)
}

/// The kernel of `R[y_1..y_m] -> R[T] / (f)`, `y_i -> T g_i`, computed by
/// eliminating `T`.
pub fn rees_kernel(i: &BlowupIdeal, x: &HypersurfaceSingularity) -> Result<Ideal> {
    let ambient = x.ring();
    let m = i.gens().len();
    let ys: Vec<String> = (1..=m).map(|k| format!("y{k}")).collect();
    let mut extra: Vec<String> = Vec::new();
    let mut ring = ambient.clone();
    for y in &ys {
        let n = ring.fresh_name(y);
        ring = ring.extend(&[n.as_str()])?;
        extra.push(n);
    }
    let t = ring.fresh_name("T");
    let big = ring.extend(&[t.as_str()])?;
    let tv = big.var(&t)?;
    let mut eqs = vec![x.f().to_ring(&big)?];
    for (k, y) in extra.iter().enumerate() {
        eqs.push(&big.var(y)? - &(&tv * &i.gens()[k].to_ring(&big)?));
    }
    Ideal::new(&big, eqs)?.eliminate(&[t.as_str()])
}

/// A generator of the form `c v + h` with `c` constant and `h` free of `v`.
fn linear_variable(p: &Poly) -> Option<usize> {
    let n = p.ring().nvars();
    (0..n).find(|&v| {
        let with_v: Vec<_> = p.terms().iter().filter(|(m, _)| m.exps()[v] > 0).collect();
        with_v.len() == 1 && with_v[0].0.degree() == 1
    })
}

/// Repeatedly solves for variables that occur linearly with constant
/// coefficient in some generator.
pub(crate) fn simplify(ideal: &Ideal) -> SimplifiedChart {
    let mut ring = ideal.ring().clone();
    let mut images: Vec<Poly> = ring.gens();
    let mut current = ideal.clone();
    loop {
        if current.is_unit() || current.is_zero() {
            break;
        }
        let gens = current.gb().polys();
        let pick = gens
            .iter()
            .filter_map(|g| linear_variable(g).map(|v| (g, v)))
            .min_by_key(|(g, v)| (g.len(), *v));
        let Some((g, v)) = pick else { break };
        let c = g
            .terms()
            .iter()
            .find(|(m, _)| m.exps()[v] > 0)
            .map(|(_, c)| c.clone())
            .expect("linear term");
        // v = -(g - c v) / c
        let value = (&(g - &ring.gen(v).scale(&c)) * &Poly::constant(&ring, -c.recip())).clone();
        let name = ring.vars()[v].clone();
        let next = ring.without(&[name.as_str()]);
        let subst = |p: &Poly| p.substitute(v, &value).to_ring(&next).expect("v eliminated");
        images = images.iter().map(&subst).collect();
        let rest: Vec<Poly> = gens.iter().map(subst).filter(|p| !p.is_zero()).collect();
        current = Ideal::new(&next, rest).expect("same ring").interreduced();
        ring = next;
    }
    SimplifiedChart {
        ring,
        ideal: current,
        images,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::IdealSource;

    fn a1() -> (HypersurfaceSingularity, BlowupIdeal) {
        let r = Ring::new(["x", "y", "z"]).unwrap();
        let x = HypersurfaceSingularity::new(r.parse("x^2 + y*z").unwrap()).unwrap();
        let i = BlowupIdeal::new(vec![r.parse("x").unwrap(), r.parse("z").unwrap()], &x, IdealSource::Given).unwrap();
        (x, i)
    }

    #[test]
    fn a1_charts() {
        let (x, i) = a1();
        let charts = rees_charts(&i, &x).unwrap();
        assert_eq!(charts.len(), 2);
        // chart z != 0 with ratio r1 = x / z: after eliminating x, (y + r1^2 z)
        let cz = &charts[1];
        assert_eq!(cz.ratios, vec![(0, "r1".to_string())]);
        let sub = cz.ring.without(&["x"]);
        let e = cz.defining_ideal.eliminate(&["x"]).unwrap();
        assert!(e.equals(&Ideal::parse(&sub, &["y + r1^2*z"]).unwrap()));
        // chart x != 0 with r2 = z / x: (x + y r2)
        let cx = &charts[0];
        let sub = cx.ring.without(&["z"]);
        let e = cx.defining_ideal.eliminate(&["z"]).unwrap();
        assert!(e.equals(&Ideal::parse(&sub, &["x + y*r2"]).unwrap()));
        for c in &charts {
            assert!(c.simplified.ideal.is_zero(), "{:?}", c.simplified.ideal);
            assert_eq!(c.simplified.ring.nvars(), 2);
        }
    }

    #[test]
    fn unit_ideal_single_chart() {
        let (x, _) = a1();
        let i = BlowupIdeal::new(vec![x.ring().one()], &x, IdealSource::Given).unwrap();
        let charts = rees_charts(&i, &x).unwrap();
        assert_eq!(charts.len(), 1);
        assert!(charts[0].defining_ideal.equals(&x.ideal()));
    }

    #[test]
    fn rees_kernel_dehomogenizes_to_charts() {
        let (x, i) = a1();
        let k = rees_kernel(&i, &x).unwrap();
        // set y2 = 1, rename y1 -> r1, saturate by z
        let ring = k.ring().clone();
        let target = Ring::new(["x", "y", "z", "r1"]).unwrap();
        let images = vec![
            target.var("x").unwrap(),
            target.var("y").unwrap(),
            target.var("z").unwrap(),
            target.var("r1").unwrap(),
            target.one(),
        ];
        assert_eq!(ring.nvars(), 5);
        let dehom = k.map(&images, &target).saturate(&target.var("z").unwrap()).unwrap();
        let chart = &rees_charts(&i, &x).unwrap()[1];
        assert!(dehom.equals(&chart.defining_ideal));
    }
}
