#include <cstdio>
int main() { std::puts("pencilops"); return 0; }
