fn main() {
    println!("stepnls");
}
