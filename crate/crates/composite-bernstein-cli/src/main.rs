fn main() { println!("{}", composite_bernstein::probe()); }
