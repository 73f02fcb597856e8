#include <cstdio>
int main() { std::puts("ranklab: cli under construction"); return 0; }
