use std::path::Path;

use pcn::extractor::{extract_definitions, tokenize};

const SOURCE: &str = r#"
#define CALL(x) x()
/* int hidden(void) { } */
static int counter;

int tick(void)
{
	printk("tick %d\n", ++counter);
	return counter;
}
"#;

fn main() {
    let (tokens, diagnostics) = tokenize(SOURCE.as_bytes(), Path::new("inline.c"));
    for t in &tokens {
        println!("{:>3}  {:<16?} {}", t.line, t.kind, t.text);
    }
    assert!(diagnostics.is_empty());

    let (defs, _) = extract_definitions(&tokens);
    for d in defs {
        println!(
            "definition {} at lines {}-{}",
            d.name, d.start_line, d.end_line
        );
    }
}
