#include <cstdio>
int main(){ std::puts("riesz 1.0.0"); return 0; }
