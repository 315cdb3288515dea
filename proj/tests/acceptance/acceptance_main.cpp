#include <cstdio>
int main(){ std::printf("acceptance: placeholder\n"); return 0; }
