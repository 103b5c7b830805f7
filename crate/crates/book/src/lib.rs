//! Runs every Rust listing in `book/src` as a doc-test.

macro_rules! chapter {
    ($name:ident, $file:literal) => {
        #[doc = include_str!(concat!("../../../book/src/", $file))]
        pub mod $name {}
    };
}

chapter!(intro, "intro.md");
chapter!(channels, "channels.md");
chapter!(mi_difference, "mi-difference.md");
chapter!(advantage, "advantage.md");
chapter!(list_decoding, "list-decoding.md");
chapter!(hidden_markov, "hidden-markov.md");
chapter!(cli, "cli.md");
chapter!(output_format, "output-format.md");
