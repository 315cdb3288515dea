#include <cstdio>
int main(){ std::printf("duodecay cli placeholder\n"); return 0; }
