use clap::{Args, Parser, Subcommand, ValueEnum};

/// Argumentation networks and their G3 translations.
#[derive(Debug, Parser)]
#[command(name = "attneg", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Extensions of a plain network.
    Extensions {
        /// Input file, or `-` for stdin.
        file: String,
        #[arg(long, value_enum, default_value_t = Semantics::Complete)]
        semantics: Semantics,
    },
    /// Print a translated theory.
    Translate {
        file: String,
        #[arg(long, value_enum)]
        mode: Mode,
        #[command(flatten)]
        star: StarFlags,
    },
    /// G3 models of the translation, instantiated if `inst` facts are present.
    Models { file: String },
    /// Check a representation result on the input network.
    Verify {
        file: String,
        #[arg(long, value_enum)]
        theorem: Theorem,
    },
    /// Models of the starred theory of a network with wff units.
    SolveHigher {
        file: String,
        #[command(flatten)]
        star: StarFlags,
    },
    /// Models of an axiomatic frame with their complete labellings.
    Aaf { file: String },
    /// Encode a disjunctive, conjunctive or ADF network.
    Encode {
        file: String,
        /// Read the input as this species; defaults to the detected one.
        #[arg(long, value_enum)]
        from: Option<From>,
        /// Restrict extensions to the input's own arguments.
        #[arg(long)]
        project: bool,
    },
    /// Decide G3 validity of a propositional formula.
    Valid { formula: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Extensions { .. } => "extensions",
            Command::Translate { .. } => "translate",
            Command::Models { .. } => "models",
            Command::Verify { .. } => "verify",
            Command::SolveHigher { .. } => "solve-higher",
            Command::Aaf { .. } => "aaf",
            Command::Encode { .. } => "encode",
            Command::Valid { .. } => "valid",
        }
    }

    /// The input file, for commands that read one.
    pub fn file(&self) -> Option<&str> {
        match self {
            Command::Extensions { file, .. }
            | Command::Translate { file, .. }
            | Command::Models { file }
            | Command::Verify { file, .. }
            | Command::SolveHigher { file, .. }
            | Command::Aaf { file }
            | Command::Encode { file, .. } => Some(file),
            Command::Valid { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Semantics {
    Complete,
    Stable,
    Grounded,
    Preferred,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    DeltaProp,
    Theta,
    DeltaPred,
    #[value(name = "o-a")]
    OA,
    Star,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Thm2,
    Theta,
    Thm42,
    Oa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum From {
    Conjunctive,
    Disjunctive,
    Adf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Joint {
    Implicit,
    Declared,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Support {
    PerAttacker,
    Aggregate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RFlag {
    Free,
    Pinned,
    Mentioned,
}

/// Options for the starred clauses.
#[derive(Debug, Clone, Args)]
pub struct StarFlags {
    /// Which node-to-node attacks exist.
    #[arg(long, value_enum, default_value_t = Joint::Implicit)]
    pub joint: Joint,
    /// Shape of the support clause for wff units.
    #[arg(long, value_enum, default_value_t = Support::PerAttacker)]
    pub wff_support: Support,
    /// How the solver ranges over R.
    #[arg(long, value_enum, default_value_t = RFlag::Free)]
    pub r_mode: RFlag,
    /// Refuse searches with more three-valued unknowns than this.
    #[arg(long, default_value_t = 14)]
    pub max_unknowns: usize,
}
