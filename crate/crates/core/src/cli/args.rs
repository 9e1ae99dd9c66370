use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "scinf", version, about = "Certified fillings of far loops in Cayley complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Where a presentation comes from.
#[derive(Debug, Args)]
pub struct Source {
    /// Built-in presentation (`gervais3`).
    #[arg(long, group = "src")]
    pub preset: Option<String>,
    /// Presentation JSON file.
    #[arg(long, group = "src")]
    pub presentation: Option<PathBuf>,
    /// Oracle group: z2, z3, z4, f2xz3 or raag:FILE.
    #[arg(long, group = "src")]
    pub group: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify the hypothesis for a set T.
    Check {
        #[command(flatten)]
        source: Source,
        /// Comma-separated members of T.
        #[arg(long)]
        t: String,
        /// Restrict to these relator indices.
        #[arg(long, value_delimiter = ',')]
        relators: Option<Vec<usize>>,
    },
    /// Number of ends under a certified hypothesis.
    Ends {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        t: String,
    },
    /// Write the genus-3 mapping class group presentation.
    Gervais {
        #[arg(long, default_value_t = 3)]
        genus: u32,
        /// JSON list of good triples `[[i, j, k], ...]`.
        #[arg(long)]
        triples: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the mapping class group of a surface of genus G with R
    /// boundary components and S punctures.
    McgClassify { g: u32, r: u32, s: u32 },
    /// Tables of L1, M1, L2, M2 and the threshold.
    Constants {
        #[arg(long)]
        group: String,
        /// Single value or inclusive range `a..b`.
        #[arg(long, default_value = "1")]
        m: String,
        #[arg(long)]
        t: Option<String>,
        /// Accepted for compatibility; output is always JSON.
        #[arg(long)]
        json: bool,
    },
    /// Randomized trials of one of the four lemmas.
    Probe {
        #[arg(long)]
        lemma: u8,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        t: Option<String>,
    },
    /// Build a van Kampen diagram from a grid loop or a conjugate product.
    Diagram {
        #[arg(long)]
        group: String,
        #[arg(long, group = "d")]
        r#loop: Option<String>,
        #[arg(long, group = "d")]
        product: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fill a far loop by a certified 3-ball.
    Fill {
        #[arg(long)]
        group: String,
        #[arg(long)]
        r#loop: Option<String>,
        /// Conjugate-product JSON for the diagram instead of a grid.
        #[arg(long)]
        product: Option<PathBuf>,
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Re-check a filling certificate.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Draw a diagram JSON as SVG or DOT.
    Render {
        #[arg(long)]
        group: String,
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long, default_value = "svg")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
