// placeholder main; the real CLI lands with the runner module
int main() { return 0; }
