use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "grascurve", version, about = "Exact computations with curves on Gr(2,5) and its linear sections")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Section preset (Y6, Y5, Y4, Y3, Y2) or a JSON file of covectors.
    #[arg(long, global = true, default_value = "Y6")]
    pub section: String,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for enumeration and interpolation.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Maximum number of membership tests for finite-field enumeration.
    #[arg(long, global = true, default_value_t = grascurve_core::ffenum::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Print a key/value table instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Curve families read from JSON.
    Curve {
        #[command(subcommand)]
        op: CurveOp,
    },
    /// Fibre computations on the chosen section.
    Section {
        #[command(subcommand)]
        op: SectionOp,
    },
    /// Vanishing forms on sampled loci.
    Ideal {
        #[command(subcommand)]
        op: IdealOp,
    },
    /// Exhaustive counts over GF(p).
    Enum(EnumArgs),
    /// Run named checks, or all of them.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct CurveFile {
    /// Path to a curve JSON file: {"rows": [[form×5],[form×5]]}.
    #[arg(long)]
    pub curve: String,
}

#[derive(Subcommand, Debug)]
pub enum CurveOp {
    /// Kind, splitting type and Plücker degree
    Classify(CurveFile),
    /// Common point of the lines of a cone
    Vertex(CurveFile),
    /// Span of the lines of the curve
    Envelope(CurveFile),
    /// Axis line of a scroll cubic, or the vertex of a cone
    Axis(CurveFile),
    /// Whether the curve lies in the section given by --section.
    Member(CurveFile),
}

#[derive(Subcommand, Debug)]
pub enum SectionOp {
    /// Lines of the section with a given vertex.
    FiberLines {
        #[arg(long)]
        point: String,
    },
    /// Vertices of the lines of the section inside a plane.
    PlaneFiber {
        #[arg(long)]
        plane: String,
    },
    /// 3-spaces V₄ through a point with h(y ∧ V₄) = 0.
    Sigma31 {
        #[arg(long)]
        point: String,
    },
    /// Whether every section form vanishes on a plane.
    Sigma22 {
        #[arg(long)]
        plane: String,
    },
    /// Conic cut on the lines of a 3-space by a three-hyperplane section.
    Conic {
        #[arg(long)]
        space: String,
    },
    /// Splitting type of the normal bundle of a line (vertex in plane).
    Nbundle {
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        plane: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum IdealOp {
    /// Forms of a given degree vanishing on a sampled locus
    Interpolate {
        /// sigma20, c0, y3-vertex or gr25.
        #[arg(long)]
        locus: String,
        #[arg(long)]
        degree: u32,
        /// Report only forms not generated by the vanishing forms of degree one lower.
        #[arg(long)]
        modulo_lower: bool,
    },
}

#[derive(Args, Debug)]
pub struct EnumArgs {
    /// Prime field size
    #[arg(long)]
    pub p: u32,
    /// lines, lines-direct, planes31, planes22 or subspaces.
    #[arg(long)]
    pub object: String,
    /// Dimension for --object subspaces.
    #[arg(long)]
    pub k: Option<usize>,
    /// Include the objects found
    #[arg(long)]
    pub witnesses: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Check ids to run.
    pub ids: Vec<String>,
    /// Run every check
    #[arg(long)]
    pub all: bool,
    /// List check ids and exit.
    #[arg(long)]
    pub list: bool,
}
