//! One function per subcommand: merge parameters, call the library, build a
//! report.

use serde::Deserialize;
use swcalc_core::basic_classes::model_lattice;
use swcalc_core::elliptic::{
    divisibility, expected_divisibilities, general_divisibility, recover_multiplicities, sw_mult_blowup,
    sw_mult_closed, sw_mult_series, EllipticSurface, RecoveryInput,
};
use swcalc_core::surface::{vdim_from_determinant, vdim_twisting};
use swcalc_core::{IntersectionLattice, LatticeVector, SurfaceInvariants};

use crate::input::{load, Params};
use crate::output::Report;
use crate::{CliError, Command, Method, Source, SurfaceFlags};

impl Source {
    fn params(&self) -> Result<Params, CliError> {
        Ok(Params::new(load(self.input.as_deref())?))
    }
}

impl SurfaceFlags {
    fn apply(&self, p: &mut Params) {
        p.set("p_g", self.p_g)
            .set("q", self.q)
            .set("kmin_sq", self.kmin_sq)
            .set("kmin_torsion_order", self.kmin_torsion_order)
            .set("n_exceptional", self.n_exceptional);
    }
}

fn surface(flags: &SurfaceFlags, src: &Source) -> Result<(SurfaceInvariants, Params), CliError> {
    let mut p = src.params()?;
    flags.apply(&mut p);
    Ok((p.parse()?, p))
}

#[derive(Deserialize)]
struct LatticeDoc {
    gram: Vec<Vec<i64>>,
    #[serde(default)]
    labels: Vec<String>,
}

impl LatticeDoc {
    fn build(self) -> Result<IntersectionLattice, CliError> {
        Ok(if self.labels.is_empty() {
            IntersectionLattice::from_gram(self.gram)?
        } else {
            IntersectionLattice::new(self.gram, self.labels)?
        })
    }
}

pub fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::SurfaceInfo { surface: flags, src } => {
            let (inv, _) = surface(&flags, &src)?;
            let kappa = inv.kodaira_dimension()?;
            let d = inv.derive()?;
            Ok(Report::record(vec![
                ("kodaira", kappa.to_string()),
                ("chi", d.chi.to_string()),
                ("kx_sq", d.kx_sq.to_string()),
                ("e", d.e.to_string()),
                ("sigma", d.sigma.to_string()),
                ("b1", d.b1.to_string()),
                ("b2", d.b2.to_string()),
                ("b_plus", d.b_plus.to_string()),
                ("b_minus", d.b_minus.to_string()),
            ]))
        }
        Command::Kodaira { surface: flags, src } => {
            let (inv, _) = surface(&flags, &src)?;
            Ok(Report::value("kodaira", inv.kodaira_dimension()?))
        }
        Command::Plurigenus { surface: flags, n, src } => {
            #[derive(Deserialize)]
            struct Index {
                n: i64,
            }
            let (inv, mut p) = surface(&flags, &src)?;
            let Index { n } = p.set("n", n).parse()?;
            Ok(Report::value("plurigenus", inv.plurigenus(n)?))
        }
        Command::Vdim { surface: flags, det_sq, lattice, l, k, src } => {
            let mut p = src.params()?;
            p.set("gram", lattice.gram).set("l", l).set("k", k);
            if p.has("gram") {
                #[derive(Deserialize)]
                struct Twisted {
                    l: Vec<i64>,
                    k: Vec<i64>,
                }
                let lat = p.parse::<LatticeDoc>()?.build()?;
                let t: Twisted = p.parse()?;
                let (l, k) = (LatticeVector::from_ints(&t.l), LatticeVector::from_ints(&t.k));
                let vdim = vdim_twisting(&lat, &l, &k)?;
                debug_assert_eq!(vdim, vdim_from_determinant(&lat, &l, &k)?);
                if !lat.is_characteristic(&k)? {
                    return Err(CliError::Domain(format!(
                        "K = {k} is not characteristic: K.x = x.x (mod 2) fails"
                    )));
                }
                return Ok(Report::value("vdim", vdim));
            }
            flags.apply(&mut p);
            #[derive(Deserialize)]
            struct Det {
                det_sq: i64,
            }
            let inv: SurfaceInvariants = p.parse()?;
            let Det { det_sq } = p.set("det_sq", det_sq).parse()?;
            Ok(Report::value("vdim", inv.vdim_real(det_sq)?))
        }
        Command::Swmult { chi, g, d, method, src } => {
            #[derive(Deserialize)]
            struct P {
                chi: i64,
                g: i64,
                d: i64,
                #[serde(default = "closed")]
                method: Method,
            }
            fn closed() -> Method {
                Method::Closed
            }
            let mut p = src.params()?;
            let P { chi, g, d, method } =
                p.set("chi", chi).set("g", g).set("d", d).set("method", method).parse()?;
            let n = match method {
                Method::Closed => sw_mult_closed(chi, g, d),
                Method::Series => sw_mult_series(chi, g, d)?,
            };
            Ok(Report::value("sw_mult", n))
        }
        Command::Blowup { chi, g, d, a, src } => {
            #[derive(Deserialize)]
            struct P {
                chi: i64,
                g: i64,
                d: i64,
                a: i64,
            }
            let mut p = src.params()?;
            let P { chi, g, d, a } = p.set("chi", chi).set("g", g).set("d", d).set("a", a).parse()?;
            Ok(Report::value("sw_mult", sw_mult_blowup(chi, g, d, a)?))
        }
        Command::Divisibility { p: fp, q: fq, p_g, g, chi, fibers, src } => {
            let mut p = src.params()?;
            p.set("p", fp).set("q", fq).set("p_g", p_g).set("g", g).set("chi", chi).set("fibers", fibers);
            if p.has("fibers") {
                let surf: EllipticSurface = p.parse()?;
                return Ok(Report::value("d", general_divisibility(&surf)?));
            }
            #[derive(Deserialize)]
            struct P {
                p: u64,
                q: u64,
                p_g: u32,
            }
            let P { p, q, p_g } = p.parse()?;
            if p == 0 || q == 0 {
                return Err(CliError::Domain("fiber multiplicities must be positive".into()));
            }
            let e = expected_divisibilities(p, q, p_g);
            debug_assert_eq!(e.d, divisibility(p, q, p_g));
            Ok(Report::record(vec![
                ("d", e.d.to_string()),
                ("d2", e.d2.map_or_else(|| "none".to_string(), |x| x.to_string())),
            ]))
        }
        Command::Recover { p_g, gcd_pq, d, d2, src } => {
            let mut p = src.params()?;
            let input: RecoveryInput =
                p.set("p_g", p_g).set("gcd_pq", gcd_pq).set("d", d).set("d2", d2).parse()?;
            let (p, q) = recover_multiplicities(&input)?;
            Ok(Report::record(vec![("p", p.to_string()), ("q", q.to_string())])
                .with_headline(format!("({p},{q})")))
        }
        Command::Candidates { surface: flags, kmin_div, src } => {
            #[derive(Deserialize)]
            struct P {
                #[serde(default = "one")]
                kmin_div: u32,
            }
            fn one() -> u32 {
                1
            }
            let (inv, mut p) = surface(&flags, &src)?;
            let P { kmin_div } = p.set("kmin_div", kmin_div).parse()?;
            let model = model_lattice(&inv, kmin_div)?;
            let mut report = Report::default();
            for c in model.candidates(&inv)? {
                let signs: Vec<_> = c.signs.iter().map(|&s| if s > 0 { "+" } else { "-" }).collect();
                report = report.with_record(vec![
                    ("lambda", c.lambda.to_string()),
                    ("signs", if signs.is_empty() { "none".into() } else { signs.concat() }),
                    ("vector", c.vector.to_string()),
                    ("square", c.square.to_string()),
                ]);
            }
            Ok(report)
        }
        Command::Reflect { lattice, v, s, src } => {
            #[derive(Deserialize)]
            struct P {
                v: Vec<i64>,
                s: Vec<i64>,
            }
            let mut p = src.params()?;
            p.set("gram", lattice.gram).set("v", v).set("s", s);
            let lat = p.parse::<LatticeDoc>()?.build()?;
            let P { v, s } = p.parse()?;
            let (v, s) = (LatticeVector::from_ints(&v), LatticeVector::from_ints(&s));
            let image = lat.reflect_sphere(&v, &s)?;
            Ok(Report::record(vec![
                ("image", image.to_string()),
                ("v_dot_s", lat.pair(&v, &s)?.to_string()),
                ("s_sq", lat.square(&s)?.to_string()),
                ("v_characteristic", lat.is_characteristic(&v)?.to_string()),
                ("image_characteristic", lat.is_characteristic(&image)?.to_string()),
            ]))
        }
        Command::Selftest => selftest(),
    }
}

fn selftest() -> Result<Report, CliError> {
    let mut cases = 0;
    let mut mismatches = Vec::new();
    for chi in 0..=6 {
        for g in 0..=4 {
            for d in 0..=10 {
                cases += 1;
                let closed = sw_mult_closed(chi, g, d);
                let series = sw_mult_series(chi, g, d)?;
                if series != closed {
                    mismatches.push(format!("({chi},{g},{d})"));
                }
            }
        }
    }
    let failed = !mismatches.is_empty();
    let mut report = Report::record(vec![
        ("grid", "chi<=6,g<=4,d<=10".to_string()),
        ("cases", cases.to_string()),
        ("mismatches", mismatches.len().to_string()),
        ("status", if failed { "FAIL" } else { "PASS" }.to_string()),
    ]);
    if failed {
        report = report.with_headline(format!("FAIL: mismatches at {}", mismatches.join(" ")));
    } else {
        report = report.with_headline(format!("PASS: {cases} cases, closed form = series"));
    }
    report.failed = failed;
    Ok(report)
}
