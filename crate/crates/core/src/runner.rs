//! Config parsing, run dispatch, CSV and SVG output, and the figure
//! reproduction driver.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::dynamics::TimeGrid;
use crate::quantifiers::{QuadratureSpec, QuantifierRecord};
use crate::spin_boson::gad::{run_gad, GadConfig};
use crate::spin_boson::jcm::{run_jcm, JcmConfig};
use crate::spin_boson::nmad::{run_nmad, NmadConfig};
use crate::spin_spin::central_spin::{run_central_spin, CentralSpinConfig};
use crate::spin_spin::collision::{run_collision, CollisionConfig};
use crate::states::BlochVector;

pub const CSV_HEADER: &str = "abscissa,delta,entropy,sigma,ergotropy";
pub const KERNEL_CONVENTION: &str = "Delta(n) = (I + sqrt(3) n.sigma)/(4 pi); delta = int |W| dOmega - 1";

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{model}: {source}")]
    Engine {
        model: &'static str,
        #[source]
        source: crate::Error,
    },
    #[error("{0}")]
    Statistics(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl RunError {
    /// Process exit code: 1 for configuration problems, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 1,
            _ => 2,
        }
    }
}

pub type RunResult<T> = std::result::Result<T, RunError>;

fn config_err(msg: impl Into<String>) -> RunError {
    RunError::Config(msg.into())
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelConfig {
    Collision(CollisionConfig),
    CentralSpin(CentralSpinConfig),
    Nmad(NmadConfig),
    Gad(GadConfig),
    Jcm(JcmConfig),
}

impl ModelConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ModelConfig::Collision(_) => "collision",
            ModelConfig::CentralSpin(_) => "central-spin",
            ModelConfig::Nmad(_) => "nmad",
            ModelConfig::Gad(_) => "gad",
            ModelConfig::Jcm(_) => "jcm",
        }
    }

    fn validate(&self) -> crate::Result<()> {
        match self {
            ModelConfig::Collision(c) => c.validate(),
            ModelConfig::CentralSpin(c) => c.validate(),
            ModelConfig::Nmad(c) => c.validate(),
            ModelConfig::Gad(c) => c.validate(),
            ModelConfig::Jcm(c) => {
                c.validate()?;
                crate::spin_boson::jcm::jcm_bath(c).map(|_| ())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub model: ModelConfig,
    pub output_path: Option<PathBuf>,
    pub emit_plot: bool,
    pub plot_path: Option<PathBuf>,
    pub quadrature: QuadratureSpec,
}

impl RunSpec {
    pub fn new(model: ModelConfig) -> Self {
        Self {
            model,
            output_path: None,
            emit_plot: false,
            plot_path: None,
            quadrature: QuadratureSpec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub model: &'static str,
    pub records: Vec<QuantifierRecord>,
    pub metadata: BTreeMap<String, String>,
}

impl RunOutput {
    pub fn column(&self, f: impl Fn(&QuantifierRecord) -> f64) -> Vec<f64> {
        self.records.iter().map(f).collect()
    }

    pub fn abscissa_label(&self) -> &'static str {
        if self.model == "collision" {
            "collision n"
        } else {
            "t"
        }
    }
}

// ---------------------------------------------------------------------------
// Config parsing

/// Evaluates `a*b/c`-style products of numbers and `pi`, with an optional sign.
pub fn parse_number(text: &str) -> Option<f64> {
    let text = text.trim();
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, text.strip_prefix('+').unwrap_or(text)),
    };
    let mut value = sign;
    let mut op = '*';
    let mut rest = body;
    loop {
        let end = rest.find(['*', '/']).unwrap_or(rest.len());
        let token = rest[..end].trim();
        let factor = match token {
            "pi" | "π" => std::f64::consts::PI,
            _ if token.is_empty() => return None,
            _ => token.parse::<f64>().ok()?,
        };
        value = if op == '*' { value * factor } else { value / factor };
        if end == rest.len() {
            break;
        }
        op = rest[end..].chars().next()?;
        rest = &rest[end + 1..];
    }
    value.is_finite().then_some(value)
}

struct Entries {
    values: BTreeMap<String, String>,
    used: BTreeSet<String>,
}

impl Entries {
    fn parse(text: &str) -> RunResult<Self> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| config_err(format!("line {}: expected `key = value`", lineno + 1)))?;
            let key = k.trim().to_string();
            if key.is_empty() {
                return Err(config_err(format!("line {}: empty key", lineno + 1)));
            }
            if values.insert(key.clone(), v.trim().to_string()).is_some() {
                return Err(config_err(format!("duplicate key `{key}`")));
            }
        }
        Ok(Self {
            values,
            used: BTreeSet::new(),
        })
    }

    fn raw(&mut self, key: &str) -> Option<String> {
        let v = self.values.get(key).cloned();
        if v.is_some() {
            self.used.insert(key.to_string());
        }
        v
    }

    fn opt_f64(&mut self, key: &str) -> RunResult<Option<f64>> {
        self.raw(key)
            .map(|v| parse_number(&v).ok_or_else(|| config_err(format!("key `{key}`: expected a number, got `{v}`"))))
            .transpose()
    }

    fn f64(&mut self, key: &str) -> RunResult<f64> {
        self.opt_f64(key)?
            .ok_or_else(|| config_err(format!("missing required key `{key}`")))
    }

    fn opt_usize(&mut self, key: &str) -> RunResult<Option<usize>> {
        self.raw(key)
            .map(|v| {
                v.parse::<usize>()
                    .map_err(|_| config_err(format!("key `{key}`: expected a non-negative integer, got `{v}`")))
            })
            .transpose()
    }

    fn usize(&mut self, key: &str) -> RunResult<usize> {
        self.opt_usize(key)?
            .ok_or_else(|| config_err(format!("missing required key `{key}`")))
    }

    fn opt_bool(&mut self, key: &str) -> RunResult<Option<bool>> {
        self.raw(key)
            .map(|v| match v.as_str() {
                "true" => Ok(true),
                "false" => Ok(false),
                _ => Err(config_err(format!("key `{key}`: expected true or false, got `{v}`"))),
            })
            .transpose()
    }

    fn bloch(&mut self) -> RunResult<BlochVector> {
        let Some(v) = self.raw("bloch") else {
            return Ok(BlochVector::NS1);
        };
        let parts: Vec<f64> = v
            .split(',')
            .map(|p| parse_number(p).ok_or_else(|| config_err(format!("key `bloch`: bad component `{}`", p.trim()))))
            .collect::<RunResult<_>>()?;
        let [x, y, z] = parts[..] else {
            return Err(config_err("key `bloch`: expected three components `x, y, z`"));
        };
        BlochVector::new(x, y, z).map_err(|e| config_err(format!("key `bloch`: {e}")))
    }

    fn grid(&mut self, default_max: f64, default_samples: usize) -> RunResult<TimeGrid> {
        let t_min = self.opt_f64("t_min")?.unwrap_or(0.0);
        let t_max = self.opt_f64("t_max")?.unwrap_or(default_max);
        let n = self.opt_usize("n_samples")?.unwrap_or(default_samples);
        TimeGrid::uniform(t_min, t_max, n).map_err(|e| config_err(format!("time grid: {e}")))
    }

    fn finish(&self) -> RunResult<()> {
        let unknown: Vec<&str> = self
            .values
            .keys()
            .filter(|k| !self.used.contains(*k))
            .map(String::as_str)
            .collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(config_err(format!("unknown key(s): {}", unknown.join(", "))))
        }
    }
}

/// Parses the flat `key = value` config format.
///
/// `model` selects the engine; its physical parameters are required. Grid
/// keys (`t_min`, `t_max`, `n_samples`), `bloch`, `quadrature` and the few
/// documented numerical knobs fall back to defaults.
pub fn parse_config(text: &str) -> RunResult<RunSpec> {
    let mut e = Entries::parse(text)?;
    let model_name = e
        .raw("model")
        .ok_or_else(|| config_err("missing required key `model`"))?;
    let initial_state = e.bloch()?;
    let model = match model_name.as_str() {
        "collision" => ModelConfig::Collision(CollisionConfig {
            omega_s: e.f64("omega_s")?,
            omega_r: e.f64("omega_r")?,
            beta: e.f64("beta")?,
            g_sr: e.f64("g_sr")?,
            tau: e.f64("tau")?,
            theta: e.f64("theta")?,
            n_collisions: e.usize("n_collisions")?,
            initial_state,
        }),
        "central-spin" => ModelConfig::CentralSpin(CentralSpinConfig {
            omega0: e.f64("omega0")?,
            omega: e.f64("omega")?,
            beta: e.f64("beta")?,
            epsilon: e.f64("epsilon")?,
            n_bath: e.usize("n_bath")?,
            t_grid: e.grid(CentralSpinConfig::DEFAULT_T_MAX, CentralSpinConfig::DEFAULT_SAMPLES)?,
            initial_state,
        }),
        "nmad" => ModelConfig::Nmad(NmadConfig {
            omega0: e.f64("omega0")?,
            lambda: e.f64("lambda")?,
            gamma0: e.f64("gamma0")?,
            reg_epsilon: e.opt_f64("reg_epsilon")?.unwrap_or(NmadConfig::DEFAULT_REG_EPSILON),
            t_grid: e.grid(NmadConfig::DEFAULT_T_MAX, NmadConfig::DEFAULT_SAMPLES)?,
            initial_state,
        }),
        "gad" => ModelConfig::Gad(GadConfig {
            omega0: e.f64("omega0")?,
            beta: e.f64("beta")?,
            gamma: e.f64("gamma")?,
            dt: e.opt_f64("dt")?.unwrap_or(GadConfig::DEFAULT_DT),
            t_grid: e.grid(GadConfig::DEFAULT_T_MAX, GadConfig::DEFAULT_SAMPLES)?,
            initial_state,
        }),
        "jcm" => ModelConfig::Jcm(JcmConfig {
            omega0: e.f64("omega0")?,
            omega_c: e.f64("omega_c")?,
            beta: e.f64("beta")?,
            g: e.f64("g")?,
            n_max: e.opt_usize("n_max")?.unwrap_or(JcmConfig::DEFAULT_N_MAX),
            t_grid: e.grid(
                JcmConfig::DEFAULT_TAU * (JcmConfig::DEFAULT_SAMPLES - 1) as f64,
                JcmConfig::DEFAULT_SAMPLES,
            )?,
            initial_state,
        }),
        other => {
            return Err(config_err(format!(
                "key `model`: unknown model `{other}` (expected collision, central-spin, nmad, gad or jcm)"
            )))
        }
    };
    let quadrature = match e.raw("quadrature") {
        Some(v) => parse_quadrature(&v)?,
        None => QuadratureSpec::default(),
    };
    let output_path = e.raw("csv").map(PathBuf::from);
    let plot_path = e.raw("plot").map(PathBuf::from);
    let emit_plot = e.opt_bool("emit_plot")?.unwrap_or(plot_path.is_some());
    e.finish()?;
    model.validate().map_err(|err| config_err(err.to_string()))?;
    Ok(RunSpec {
        model,
        output_path,
        emit_plot,
        plot_path,
        quadrature,
    })
}

/// Parses `NTHETA,NPHI`.
pub fn parse_quadrature(text: &str) -> RunResult<QuadratureSpec> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| config_err(format!("quadrature: expected `NTHETA,NPHI`, got `{text}`")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| config_err(format!("quadrature: `{}` is not an integer", s.trim())))
    };
    QuadratureSpec::new(parse(a)?, parse(b)?).map_err(|e| config_err(format!("quadrature: {e}")))
}

// ---------------------------------------------------------------------------
// Running

fn bloch_meta(b: BlochVector) -> String {
    format!("{}, {}, {}", b.x, b.y, b.z)
}

fn grid_meta(meta: &mut BTreeMap<String, String>, grid: &TimeGrid) {
    let t = grid.times();
    meta.insert("t_min".into(), t[0].to_string());
    meta.insert("t_max".into(), t[t.len() - 1].to_string());
    meta.insert("n_samples".into(), t.len().to_string());
}

/// Dispatches to the engine selected by `spec`.
pub fn run(spec: &RunSpec) -> RunResult<RunOutput> {
    let model = spec.model.name();
    let wrap = |source| RunError::Engine { model, source };
    let mut meta = BTreeMap::new();
    meta.insert("model".into(), model.to_string());
    meta.insert("kernel".into(), KERNEL_CONVENTION.to_string());
    meta.insert(
        "quadrature".into(),
        format!("{}x{}", spec.quadrature.n_theta, spec.quadrature.n_phi),
    );
    meta.insert("version".into(), env!("CARGO_PKG_VERSION").to_string());
    let q = spec.quadrature;

    let records = match &spec.model {
        ModelConfig::Collision(c) => {
            for (k, v) in [
                ("omega_s", c.omega_s),
                ("omega_r", c.omega_r),
                ("beta", c.beta),
                ("g_sr", c.g_sr),
                ("tau", c.tau),
                ("theta", c.theta),
            ] {
                meta.insert(k.into(), v.to_string());
            }
            meta.insert("n_collisions".into(), c.n_collisions.to_string());
            meta.insert("bloch".into(), bloch_meta(c.initial_state));
            run_collision(c, q).map_err(wrap)?
        }
        ModelConfig::CentralSpin(c) => {
            for (k, v) in [
                ("omega0", c.omega0),
                ("omega", c.omega),
                ("beta", c.beta),
                ("epsilon", c.epsilon),
            ] {
                meta.insert(k.into(), v.to_string());
            }
            meta.insert("n_bath".into(), c.n_bath.to_string());
            meta.insert("bloch".into(), bloch_meta(c.initial_state));
            grid_meta(&mut meta, &c.t_grid);
            run_central_spin(c, q).map_err(wrap)?
        }
        ModelConfig::Nmad(c) => {
            for (k, v) in [
                ("omega0", c.omega0),
                ("lambda", c.lambda),
                ("gamma0", c.gamma0),
                ("reg_epsilon", c.reg_epsilon),
            ] {
                meta.insert(k.into(), v.to_string());
            }
            meta.insert("bloch".into(), bloch_meta(c.initial_state));
            grid_meta(&mut meta, &c.t_grid);
            run_nmad(c, q).map_err(wrap)?
        }
        ModelConfig::Gad(c) => {
            for (k, v) in [("omega0", c.omega0), ("beta", c.beta), ("gamma", c.gamma), ("dt", c.dt)] {
                meta.insert(k.into(), v.to_string());
            }
            meta.insert("thermal_occupation".into(), c.thermal_occupation().to_string());
            meta.insert("bloch".into(), bloch_meta(c.initial_state));
            grid_meta(&mut meta, &c.t_grid);
            run_gad(c, q).map_err(wrap)?
        }
        ModelConfig::Jcm(c) => {
            for (k, v) in [
                ("omega0", c.omega0),
                ("omega_c", c.omega_c),
                ("beta", c.beta),
                ("g", c.g),
            ] {
                meta.insert(k.into(), v.to_string());
            }
            meta.insert("n_max".into(), c.n_max.to_string());
            meta.insert("bloch".into(), bloch_meta(c.initial_state));
            grid_meta(&mut meta, &c.t_grid);
            let out = run_jcm(c, q).map_err(wrap)?;
            meta.insert("truncation_tail_weight".into(), format!("{:.6e}", out.tail_weight));
            meta.insert("max_edge_population".into(), format!("{:.6e}", out.max_edge_population));
            if let Some(w) = out.leakage_warning {
                meta.insert("warning".into(), w);
            }
            out.records
        }
    };

    for r in &records {
        r.check_qubit_invariants().map_err(wrap)?;
    }
    if records.windows(2).any(|w| w[1].abscissa <= w[0].abscissa) {
        return Err(RunError::Statistics(format!(
            "{model}: abscissa not strictly increasing"
        )));
    }
    Ok(RunOutput {
        model,
        records,
        metadata: meta,
    })
}

// ---------------------------------------------------------------------------
// CSV

fn fmt_value(v: f64) -> String {
    format!("{v:.11e}")
}

/// CSV text: `# key = value` metadata lines, header, one row per record.
pub fn render_csv(out: &RunOutput) -> String {
    let mut s = String::new();
    for (k, v) in &out.metadata {
        let _ = writeln!(s, "# {k} = {}", v.replace(['\n', '\r'], " "));
    }
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in &out.records {
        let row = [r.abscissa, r.delta, r.entropy, r.sigma, r.ergotropy].map(fmt_value);
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

/// Parses text written by [`render_csv`].
pub fn parse_csv(text: &str) -> RunResult<(BTreeMap<String, String>, Vec<QuantifierRecord>)> {
    let bad = |msg: String| RunError::Statistics(format!("CSV: {msg}"));
    let mut meta = BTreeMap::new();
    let mut records = Vec::new();
    let mut seen_header = false;
    for line in text.lines() {
        if let Some(c) = line.strip_prefix("# ") {
            if let Some((k, v)) = c.split_once(" = ") {
                meta.insert(k.to_string(), v.to_string());
            }
        } else if line == CSV_HEADER {
            seen_header = true;
        } else if !line.is_empty() {
            if !seen_header {
                return Err(bad("data before header".into()));
            }
            let v: Vec<f64> = line
                .split(',')
                .map(|f| f.parse::<f64>().map_err(|_| bad(format!("bad number `{f}`"))))
                .collect::<RunResult<_>>()?;
            let [abscissa, delta, entropy, sigma, ergotropy] = v[..] else {
                return Err(bad(format!("expected 5 columns, got {}", v.len())));
            };
            records.push(QuantifierRecord {
                abscissa,
                delta,
                entropy,
                sigma,
                ergotropy,
            });
        }
    }
    if !seen_header {
        return Err(bad("missing header".into()));
    }
    Ok((meta, records))
}

/// Writes via a temporary file in the destination directory and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> RunResult<()> {
    let io = |source| RunError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut builder = tempfile::Builder::new();
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        builder.permissions(std::fs::Permissions::from_mode(0o644));
    }
    let mut tmp = builder.tempfile_in(dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.flush().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn write_csv(out: &RunOutput, path: &Path) -> RunResult<()> {
    write_atomic(path, render_csv(out).as_bytes())
}

// ---------------------------------------------------------------------------
// SVG

const WIDTH: f64 = 720.0;
const PANEL_H: f64 = 300.0;
const MARGIN_L: f64 = 90.0;
const MARGIN_R: f64 = 90.0;
const MARGIN_T: f64 = 40.0;
const GAP: f64 = 80.0;

/// Axis range with 5% padding; flat series get a symmetric pad around the value.
fn axis_range(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    if span > 0.0 {
        (lo - 0.05 * span, hi + 0.05 * span)
    } else {
        let pad = if lo.abs() > 0.0 { 0.05 * lo.abs() } else { 1.0 };
        (lo - pad, hi + pad)
    }
}

fn tick_label(v: f64) -> String {
    if v == 0.0 || (1e-2..1e4).contains(&v.abs()) {
        format!("{v:.3}")
    } else {
        format!("{v:.2e}")
    }
}

struct Series<'a> {
    label: &'a str,
    values: Vec<f64>,
    color: &'a str,
    dash: bool,
}

fn panel(svg: &mut String, top: f64, title: &str, xs: &[f64], x_label: &str, left: &Series, right: &Series) {
    let x0 = MARGIN_L;
    let x1 = WIDTH - MARGIN_R;
    let (y0, y1) = (top + PANEL_H, top);
    let (xmin, xmax) = axis_range(xs);
    let sx = |x: f64| x0 + (x - xmin) / (xmax - xmin) * (x1 - x0);

    let _ = writeln!(
        svg,
        r#"<rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{PANEL_H:.2}" fill="none" stroke="black"/>"#,
        x1 - x0
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="15" text-anchor="middle">{title}</text>"#,
        0.5 * (x0 + x1),
        y1 - 12.0
    );
    for k in 0..=4 {
        let x = xmin + (xmax - xmin) * k as f64 / 4.0;
        let px = sx(x);
        let _ = writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#,
            y0 + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{px:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
            y0 + 18.0,
            tick_label(x)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{x_label}</text>"#,
        0.5 * (x0 + x1),
        y0 + 38.0
    );

    for (series, axis_x, anchor, dir) in [(left, x0, "end", -1.0), (right, x1, "start", 1.0)] {
        let (lo, hi) = axis_range(&series.values);
        let sy = |v: f64| y0 - (v - lo) / (hi - lo) * (y0 - y1);
        for k in 0..=4 {
            let v = lo + (hi - lo) * k as f64 / 4.0;
            let py = sy(v);
            let _ = writeln!(
                svg,
                r#"<line x1="{axis_x:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="{}"/>"#,
                axis_x + 5.0 * dir,
                series.color
            );
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="{anchor}" fill="{}">{}</text>"#,
                axis_x + 8.0 * dir,
                py + 4.0,
                series.color,
                tick_label(v)
            );
        }
        let lx = axis_x + 70.0 * dir;
        let ly = 0.5 * (y0 + y1);
        let _ = writeln!(
            svg,
            r#"<text x="{lx:.2}" y="{ly:.2}" font-size="14" text-anchor="middle" fill="{}" transform="rotate(-90 {lx:.2} {ly:.2})">{}</text>"#,
            series.color, series.label
        );
        let points: Vec<String> = xs
            .iter()
            .zip(&series.values)
            .map(|(&x, &v)| format!("{:.2},{:.2}", sx(x), sy(v)))
            .collect();
        let dash = if series.dash { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"/>"#,
            series.color,
            points.join(" ")
        );
    }

    // Legend, top right inside the frame.
    for (i, series) in [left, right].iter().enumerate() {
        let ly = y1 + 18.0 + 18.0 * i as f64;
        let lx = x1 - 110.0;
        let dash = if series.dash { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{}" stroke-width="1.5"{dash}/>"#,
            lx + 30.0,
            series.color
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="12">{}</text>"#,
            lx + 36.0,
            ly + 4.0,
            series.label
        );
    }
}

/// Two stacked panels: (a) δ and S, (b) Σ and 𝒲, each pair on twin y-axes.
pub fn render_plot(out: &RunOutput) -> RunResult<String> {
    if out.records.len() < 2 {
        return Err(RunError::Statistics(format!(
            "plot needs at least 2 records, got {}",
            out.records.len()
        )));
    }
    let xs = out.column(|r| r.abscissa);
    let height = MARGIN_T + 2.0 * PANEL_H + GAP + 60.0;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let x_label = out.abscissa_label();
    panel(
        &mut svg,
        MARGIN_T,
        &format!("(a) {}", out.model),
        &xs,
        x_label,
        &Series {
            label: "δ",
            values: out.column(|r| r.delta),
            color: "#1f4e9c",
            dash: false,
        },
        &Series {
            label: "S",
            values: out.column(|r| r.entropy),
            color: "#c0392b",
            dash: true,
        },
    );
    panel(
        &mut svg,
        MARGIN_T + PANEL_H + GAP,
        &format!("(b) {}", out.model),
        &xs,
        x_label,
        &Series {
            label: "Σ",
            values: out.column(|r| r.sigma),
            color: "#1e7b34",
            dash: false,
        },
        &Series {
            label: "𝒲",
            values: out.column(|r| r.ergotropy),
            color: "#8e44ad",
            dash: true,
        },
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn write_plot(out: &RunOutput, path: &Path) -> RunResult<()> {
    write_atomic(path, render_plot(out)?.as_bytes())
}

// ---------------------------------------------------------------------------
// Statistics and figure reproduction

/// Pearson correlation coefficient.
pub fn corr(a: &[f64], b: &[f64]) -> RunResult<f64> {
    if a.len() != b.len() {
        return Err(RunError::Statistics(format!(
            "corr: lengths differ ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if a.len() < 3 {
        return Err(RunError::Statistics(format!(
            "corr: need at least 3 samples, got {}",
            a.len()
        )));
    }
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(RunError::Statistics("corr: zero variance".into()));
    }
    Ok((sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0))
}

/// The five default figure configurations, in figure order.
pub fn figure_specs() -> Vec<(&'static str, RunSpec)> {
    vec![
        ("fig2", RunSpec::new(ModelConfig::Collision(CollisionConfig::figure2()))),
        (
            "fig3",
            RunSpec::new(ModelConfig::CentralSpin(CentralSpinConfig::figure3())),
        ),
        ("fig4", RunSpec::new(ModelConfig::Nmad(NmadConfig::figure4()))),
        ("fig5", RunSpec::new(ModelConfig::Gad(GadConfig::figure5()))),
        ("fig6", RunSpec::new(ModelConfig::Jcm(JcmConfig::figure6()))),
    ]
}

/// Correlation signs of one figure run.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureSummary {
    pub figure: &'static str,
    pub model: &'static str,
    pub records: usize,
    pub corr_delta_entropy: f64,
    pub corr_sigma_ergotropy: f64,
    pub csv_path: PathBuf,
    pub plot_path: PathBuf,
}

impl FigureSummary {
    pub fn signs_hold(&self) -> bool {
        self.corr_delta_entropy < 0.0 && self.corr_sigma_ergotropy < 0.0
    }
}

pub fn summarize(figure: &'static str, out: &RunOutput) -> RunResult<(f64, f64)> {
    let d = out.column(|r| r.delta);
    let s = out.column(|r| r.entropy);
    let sg = out.column(|r| r.sigma);
    let w = out.column(|r| r.ergotropy);
    let c1 = corr(&d, &s).map_err(|e| RunError::Statistics(format!("{figure} corr(delta, S): {e}")))?;
    let c2 = corr(&sg, &w).map_err(|e| RunError::Statistics(format!("{figure} corr(Sigma, W): {e}")))?;
    Ok((c1, c2))
}

/// Runs the five figure configurations concurrently, writes `figN_<model>.csv`
/// and `.svg` into `out_dir`, and checks the correlation signs.
///
/// Returns the summaries even when a sign fails; callers decide how to report.
pub fn reproduce_figures(out_dir: &Path, q: QuadratureSpec) -> RunResult<Vec<FigureSummary>> {
    std::fs::create_dir_all(out_dir).map_err(|source| RunError::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let specs: Vec<(&'static str, RunSpec)> = figure_specs()
        .into_iter()
        .map(|(f, mut s)| {
            s.quadrature = q;
            (f, s)
        })
        .collect();
    let results: Vec<RunResult<FigureSummary>> = std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|(figure, spec)| {
                scope.spawn(move || -> RunResult<FigureSummary> {
                    let out = run(spec)?;
                    let stem = format!("{figure}_{}", out.model);
                    let csv_path = out_dir.join(format!("{stem}.csv"));
                    let plot_path = out_dir.join(format!("{stem}.svg"));
                    write_csv(&out, &csv_path)?;
                    write_plot(&out, &plot_path)?;
                    let (c1, c2) = summarize(figure, &out)?;
                    Ok(FigureSummary {
                        figure,
                        model: out.model,
                        records: out.records.len(),
                        corr_delta_entropy: c1,
                        corr_sigma_ergotropy: c2,
                        csv_path,
                        plot_path,
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("figure worker panicked"))
            .collect()
    });
    results.into_iter().collect()
}
