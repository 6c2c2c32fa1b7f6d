use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "witt-lab", version, about = "Exact computations in generalized Witt algebras")]
pub struct Cli {
    /// Emit a versioned JSON envelope instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SigArg {
    /// W:n,m | Wstar:n,m | Wrs:n,m,r,s | Wplus:1,0 | Witt:n
    #[arg(long, default_value = "W:1,0")]
    pub sig: String,
}

#[derive(Args, Debug, Clone)]
pub struct BoxArgs {
    /// Exponential range lo:hi, once for all coordinates or once per coordinate.
    #[arg(long = "exp-box", value_name = "LO:HI", allow_hyphen_values = true)]
    pub exp_box: Vec<String>,
    /// Polynomial range lo:hi, once for all coordinates or once per coordinate.
    #[arg(long = "poly-box", value_name = "LO:HI", allow_hyphen_values = true)]
    pub poly_box: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Elements {
    /// Elements in expression syntax.
    #[arg(value_name = "ELEMENT", allow_hyphen_values = true)]
    pub items: Vec<String>,
    /// Read further elements from a file, one per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lie bracket of two elements.
    Bracket {
        #[command(flatten)]
        sig: SigArg,
        #[command(flatten)]
        elements: Elements,
    },
    /// Apply an element to a function.
    Act {
        #[command(flatten)]
        sig: SigArg,
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[arg(allow_hyphen_values = true)]
        function: String,
    },
    /// Jacobi defect of three elements.
    Jacobi {
        #[command(flatten)]
        sig: SigArg,
        #[command(flatten)]
        elements: Elements,
    },
    /// Homogeneous components under a grading.
    Grade {
        #[command(flatten)]
        sig: SigArg,
        /// exp:k | full | witt:k
        #[arg(long, default_value = "full")]
        scheme: String,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Compare two basis elements in the canonical term order.
    Order {
        #[command(flatten)]
        sig: SigArg,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Number of distinct exponential degrees.
    StringNumber {
        #[command(flatten)]
        sig: SigArg,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Largest polynomial power inside a homogeneous component.
    Lp {
        #[command(flatten)]
        sig: SigArg,
        /// Exponential prefix of the component, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Restrict to one variable.
        #[arg(long)]
        u: Option<usize>,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Split a zero-component element into its W(n) and abelian parts.
    SplitZero {
        #[command(flatten)]
        sig: SigArg,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Ideal generated inside a truncation box.
    Closure {
        #[command(flatten)]
        sig: SigArg,
        #[command(flatten)]
        bx: BoxArgs,
        #[command(flatten)]
        elements: Elements,
    },
    /// Multiplier that pushes every polynomial power to at least 1.
    Lemma1 {
        #[command(flatten)]
        sig: SigArg,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Bracket recipe reaching a basis element from a partial derivative.
    Lemma2 {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long, default_value_t = 1)]
        start_dir: usize,
        #[arg(allow_hyphen_values = true)]
        target: String,
    },
    /// Ad-diagonal test, or the list of diagonal coordinate fields.
    TorusCheck {
        #[command(flatten)]
        sig: SigArg,
        #[command(flatten)]
        bx: BoxArgs,
        #[arg(allow_hyphen_values = true)]
        candidate: Option<String>,
    },
    /// Check that a coordinate subspace is an ideal on the box.
    IdealCheck {
        #[command(flatten)]
        sig: SigArg,
        #[command(flatten)]
        bx: BoxArgs,
        /// exp:k>=m | poly:k>=m | all
        #[arg(long)]
        pred: String,
    },
    /// Split a derivation of W*(1,0) into inner, ad-partial and scalar parts.
    DeriveDecompose {
        #[command(flatten)]
        table: TableArgs,
    },
    /// Check the Leibniz rule for a derivation table.
    DeriveVerify {
        #[command(flatten)]
        table: TableArgs,
    },
    /// Antiderivative in F[e^{±x}, x] with zero constant term.
    Antideriv {
        #[arg(allow_hyphen_values = true)]
        function: String,
    },
    /// Quantum torus computations.
    Qtorus {
        #[command(subcommand)]
        op: QtorusOp,
    },
    /// Run the built-in invariant suite.
    Selftest {
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    /// JSON derivation table.
    #[arg(long, conflicts_with_all = ["g", "c", "d"])]
    pub table: Option<PathBuf>,
    /// Synthesize `ad_{g∂} + c·ad_∂ + D_d` instead of reading a table.
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    #[command(flatten)]
    pub bx: BoxArgs,
    /// Print the table as JSON and stop.
    #[arg(long)]
    pub emit_table: bool,
}

#[derive(Args, Debug, Clone)]
pub struct QArg {
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
}

#[derive(Subcommand, Debug)]
pub enum QtorusOp {
    /// [(a,i),(b,j)] in V̄.
    Bracket {
        #[command(flatten)]
        q: QArg,
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        i: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[arg(allow_negative_numbers = true)]
        j: i64,
    },
    /// Compare word brackets with V̄ brackets on random pairs.
    Theta {
        #[command(flatten)]
        q: QArg,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Words in the center within the bound.
    Center {
        #[command(flatten)]
        q: QArg,
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Nonzero ad-diagonal words within the bound.
    Toral {
        #[command(flatten)]
        q: QArg,
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
}
